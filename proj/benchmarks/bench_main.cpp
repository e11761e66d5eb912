#include <benchmark/benchmark.h>

#include <thread>

#include "kingdomino/board.hpp"
#include "kingdomino/enumerate.hpp"
#include "kingdomino/io.hpp"
#include "kingdomino/reduction.hpp"
#include "kingdomino/verify.hpp"
#include "kingdomino/witness.hpp"

using namespace kingdomino;

namespace {

const std::vector<Domino> kPairs{make_domino(1, 1, 1, 0), make_domino(2, 1, 2, 0), make_domino(3, 1, 3, 0),
                                 make_domino(4, 1, 4, 0)};

PartitionFile fig3() { return load_partition(std::string(KINGDOMINO_DATA_DIR) + "/fig3.part"); }

void BM_LegalPlacements(benchmark::State& state) {
  const auto seq = load_sequence(std::string(KINGDOMINO_DATA_DIR) + "/fig1.seq");
  const auto board = std::get<BoardState>(
      replay(seq.tau, load_certificate(std::string(KINGDOMINO_DATA_DIR) + "/fig1.cert")));
  const Domino d = make_domino(1, 0, 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(legal_placements(board, d));
}
BENCHMARK(BM_LegalPlacements);

// Full count table of the paired-color sequence, by prefix length.
void BM_CountTable(benchmark::State& state) {
  SearchOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(1));
  const std::span<const Domino> tau = std::span(kPairs).first(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_table(tau, opts));
}
BENCHMARK(BM_CountTable)->ArgsProduct({{2, 3, 4}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_MaxScore(benchmark::State& state) {
  SearchOptions opts;
  opts.prune = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(max_score(kPairs, opts));
}
BENCHMARK(BM_MaxScore)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildTau(benchmark::State& state) {
  const PartitionFile f = fig3();
  for (auto _ : state) benchmark::DoNotOptimize(build_tau(scale(f.instance, static_cast<int>(state.range(0)))));
}
BENCHMARK(BM_BuildTau)->Arg(4)->Arg(28);

void BM_Witness(benchmark::State& state) {
  const PartitionFile f = fig3();
  const ReducedInstance r = build_tau(scale(f.instance, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(build_witness(r, *f.solution));
  state.counters["dominoes"] = static_cast<double>(r.tau.size());
}
BENCHMARK(BM_Witness)->Arg(4)->Arg(28)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const PartitionFile f = fig3();
  const ReducedInstance r = build_tau(scale(f.instance, static_cast<int>(state.range(0))));
  const Certificate cert = build_witness(r, *f.solution);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(r.tau, cert, r.s));
  state.counters["dominoes"] = static_cast<double>(r.tau.size());
}
BENCHMARK(BM_Verify)->Arg(4)->Arg(28)->Unit(benchmark::kMillisecond);

}  // namespace

// libbenchmark_main ships as LTO bytecode from another compiler release.
BENCHMARK_MAIN();
