#include "hgdyn/error.hpp"

namespace hgdyn {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::arena_exhausted: return "ArenaExhausted";
    case Errc::overflow: return "Overflow";
    case Errc::already_chained: return "AlreadyChained";
    case Errc::corrupt_chain: return "CorruptChain";
    case Errc::not_found: return "NotFound";
    case Errc::already_free: return "AlreadyFree";
    case Errc::rank_out_of_range: return "RankOutOfRange";
    case Errc::not_free: return "NotFree";
    case Errc::duplicate: return "Duplicate";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::identical_sets: return "IdenticalSets";
    case Errc::class_count_mismatch: return "ClassCountMismatch";
    case Errc::missing_timestamps: return "MissingTimestamps";
    case Errc::inconsistent_state: return "InconsistentState";
    case Errc::oracle_cap_exceeded: return "OracleCapExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::cardinality_mismatch: return "CardinalityMismatch";
    case Errc::insufficient_edges: return "InsufficientEdges";
    case Errc::config_error: return "ConfigError";
    case Errc::verification_failed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace hgdyn
