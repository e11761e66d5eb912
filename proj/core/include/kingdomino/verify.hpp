#ifndef KINGDOMINO_VERIFY_HPP_
#define KINGDOMINO_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kingdomino/board.hpp"
#include "kingdomino/types.hpp"

namespace kingdomino {

struct Certificate {
  std::vector<Choice> choices;  // one per domino, in sequence order
  bool operator==(const Certificate&) const = default;
};

struct Failure {
  std::size_t index = 0;
  Violation reason = Violation::kMalformed;
  std::string detail;
  bool operator==(const Failure& o) const { return index == o.index && reason == o.reason; }
};

struct Verdict {
  bool accepted = false;
  std::int64_t score = 0;
  std::optional<Failure> failure;
};

// Work counters, for checking that verification stays polynomial.
struct ReplayCost {
  std::int64_t legality_checks = 0;  // single placements validated
  std::int64_t discard_scans = 0;    // full legal-set scans (discards only)
  std::int64_t cells_touched = 0;    // occupied cells visited by discard scans
};

// Replays the certificate, stopping at the earliest illegal choice. A
// certificate of the wrong length fails as malformed at index min(|tau|, |cert|).
std::variant<BoardState, Failure> replay(std::span<const Domino> tau, const Certificate& cert,
                                         ReplayCost* cost = nullptr);

Verdict verify_certificate(std::span<const Domino> tau, const Certificate& cert,
                           std::int64_t threshold);

// The choices recorded in a board's history.
Certificate certificate_of(const BoardState& board);

}  // namespace kingdomino

#endif  // KINGDOMINO_VERIFY_HPP_
