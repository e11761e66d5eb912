#include "kingdomino/verify.hpp"

namespace kingdomino {

std::variant<BoardState, Failure> replay(std::span<const Domino> tau, const Certificate& cert,
                                         ReplayCost* cost) {
  BoardState board;
  const std::size_t n = std::min(tau.size(), cert.choices.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Domino& d = tau[i];
    const Choice& c = cert.choices[i];
    if (cost != nullptr) {
      if (is_discard(c)) {
        ++cost->discard_scans;
        cost->cells_touched += static_cast<std::int64_t>(board.cells().size()) + 1;
      } else {
        ++cost->legality_checks;
      }
    }
    try {
      board.play(d, c);
    } catch (const RuleViolation& e) {
      return Failure{i, e.violation(), e.what()};
    }
  }
  if (tau.size() != cert.choices.size()) {
    return Failure{n, Violation::kMalformed,
                   "certificate has " + std::to_string(cert.choices.size()) +
                       " choices for " + std::to_string(tau.size()) + " dominoes"};
  }
  return board;
}

Verdict verify_certificate(std::span<const Domino> tau, const Certificate& cert,
                           std::int64_t threshold) {
  Verdict v;
  auto result = replay(tau, cert);
  if (auto* f = std::get_if<Failure>(&result)) {
    v.failure = std::move(*f);
    return v;
  }
  v.score = score(std::get<BoardState>(result));
  v.accepted = v.score >= threshold;
  return v;
}

Certificate certificate_of(const BoardState& board) {
  Certificate cert;
  cert.choices.reserve(board.history().size());
  for (const HistoryEntry& h : board.history()) cert.choices.push_back(h.choice);
  return cert;
}

}  // namespace kingdomino
