// kingdomino: command-line front end for the K-tiling laboratory.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "kingdomino/board.hpp"
#include "kingdomino/enumerate.hpp"
#include "kingdomino/io.hpp"
#include "kingdomino/reduction.hpp"
#include "kingdomino/verify.hpp"
#include "kingdomino/witness.hpp"

namespace kd = kingdomino;

namespace {

enum Exit : int {
  kOk = 0,
  kRejected = 1,     // verify: replay fine, score below threshold
  kUsage = 2,        // bad flags or arguments
  kInput = 3,        // unreadable or malformed file
  kInstance = 4,     // instance or solution fails validation
  kIllegal = 5,      // certificate breaks the rules at some index
  kWitness = 6,      // witness layout or packing failure
  kExtraction = 7,   // no partition could be read back
  kInternal = 8,
};

constexpr const char* kExitHelp =
    "Exit codes:\n"
    "  0  success (verify: certificate accepted)\n"
    "  1  verify: legal certificate scoring below the threshold\n"
    "  2  usage error\n"
    "  3  unreadable or malformed input file\n"
    "  4  invalid 4-Partition instance or solution\n"
    "  5  certificate breaks a placement rule (index and reason printed)\n"
    "  6  witness construction failed\n"
    "  7  partition extraction failed\n"
    "  8  internal error\n";

struct Failure {
  int code;
  std::string message;
};

// Opens `path` for writing, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw Failure{kInput, "cannot write " + path};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

kd::BoardState replay_or_fail(const std::vector<kd::Domino>& tau, const kd::Certificate& cert) {
  auto result = kd::replay(tau, cert);
  if (auto* f = std::get_if<kd::Failure>(&result)) {
    throw Failure{kIllegal, "domino " + std::to_string(f->index) + ": " + kd::to_string(f->reason) +
                                (f->detail.empty() ? "" : " (" + f->detail + ")")};
  }
  return std::get<kd::BoardState>(std::move(result));
}

kd::ReducedInstance reduce(const kd::PartitionFile& file, int scale) {
  auto r = kd::build_tau(kd::scale(file.instance, scale));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return r;
}

unsigned jobs_or_default(unsigned jobs) {
  return jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
}

kd::CountConvention parse_convention(const std::string& name) {
  if (name == "choices") return kd::CountConvention::kChoiceVectors;
  if (name == "dedupe") return kd::CountConvention::kSymmetricDedupe;
  if (name == "routes") return kd::CountConvention::kAnchorRoutes;
  throw Failure{kUsage, "unknown convention '" + name + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kingdomino K-tiling laboratory: scoring, enumeration, 4-Partition reduction, witnesses"};
  app.footer(kExitHelp);
  app.require_subcommand(1);

  std::string seq_path, cert_path, part_path, out_path = "-";
  int scale = kd::kDefaultScale;
  unsigned jobs = 0;
  std::optional<std::int64_t> threshold;
  bool canonical_only = false, full_only = false, no_prune = false;
  std::string convention = "choices";

  auto* score = app.add_subcommand("score", "Replay a certificate and print the score breakdown");
  score->add_option("sequence", seq_path, "domino sequence file")->required();
  score->add_option("certificate", cert_path, "certificate file")->required();

  auto* table = app.add_subcommand("table", "Per-prefix maximum score and number of play-outs reaching it");
  table->add_option("sequence", seq_path, "domino sequence file")->required();
  table->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  auto* canon = table->add_flag("--canonical", canonical_only, "print only the count up to symmetry");
  table->add_flag("--full", full_only, "print only the full count")->excludes(canon);
  table->add_option("--convention", convention, "full-count convention: choices, dedupe or routes");

  auto* maxs = app.add_subcommand("maxscore", "Maximum score over all play-outs");
  maxs->add_option("sequence", seq_path, "domino sequence file")->required();
  maxs->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  maxs->add_flag("--no-prune", no_prune, "disable branch-and-bound pruning");

  auto* red = app.add_subcommand("reduce", "Build the domino sequence for a 4-Partition instance");
  red->add_option("partition", part_path, "4-Partition file")->required();
  red->add_option("-o,--output", out_path, "output sequence file (default stdout)");
  red->add_option("--scale", scale, "item and capacity multiplier")->check(CLI::PositiveNumber);

  auto* wit = app.add_subcommand("witness", "Certificate reaching the target score from a partition solution");
  wit->add_option("partition", part_path, "4-Partition file with a solution block")->required();
  wit->add_option("-o,--output", out_path, "output certificate file (default stdout)");
  wit->add_option("--scale", scale, "item and capacity multiplier")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "Replay a certificate and check the score threshold");
  ver->add_option("sequence", seq_path, "domino sequence file")->required();
  ver->add_option("certificate", cert_path, "certificate file")->required();
  ver->add_option("--score", threshold, "threshold (default: the file's '# s=' trailer, else 0)");

  auto* ext = app.add_subcommand("extract", "Read the partition back from a reduced instance's certificate");
  ext->add_option("sequence", seq_path, "sequence written by reduce")->required();
  ext->add_option("certificate", cert_path, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*score) {
      const auto seq = kd::load_sequence(seq_path);
      const auto board = replay_or_fail(seq.tau, kd::load_certificate(cert_path));
      const auto regions = kd::regions(board);
      std::int64_t total = 0;
      std::ostringstream line;
      for (std::size_t i = 0; i < regions.size(); ++i) {
        line << (i ? "+" : "") << regions[i].value();
        total += regions[i].value();
      }
      if (!regions.empty()) line << '=';
      line << total;
      std::cout << line.str() << '\n';
    } else if (*table) {
      const auto seq = kd::load_sequence(seq_path);
      kd::SearchOptions opts;
      opts.jobs = jobs_or_default(jobs);
      opts.convention = parse_convention(convention);
      for (const auto& row : kd::count_table(seq.tau, opts)) {
        std::cout << row.prefix_length << ' ' << row.max_score << ' ';
        if (canonical_only) {
          std::cout << row.canonical_count;
        } else if (full_only) {
          std::cout << row.full_count;
        } else {
          std::cout << row.canonical_count << " (" << row.full_count << ')';
        }
        std::cout << '\n';
      }
    } else if (*maxs) {
      const auto seq = kd::load_sequence(seq_path);
      kd::SearchOptions opts;
      opts.jobs = jobs_or_default(jobs);
      opts.prune = !no_prune;
      std::cout << kd::max_score(seq.tau, opts) << '\n';
    } else if (*red) {
      const auto file = kd::load_partition(part_path);
      const auto r = reduce(file, scale);
      Output out(out_path);
      kd::write_reduced(out.stream(), r);
    } else if (*wit) {
      const auto file = kd::load_partition(part_path);
      if (!file.solution) throw Failure{kInstance, part_path + ": no solution block"};
      const auto r = reduce(file, scale);
      const auto cert = kd::build_witness(r, *file.solution);
      Output out(out_path);
      kd::write_certificate(out.stream(), cert);
    } else if (*ver) {
      const auto seq = kd::load_sequence(seq_path);
      const auto cert = kd::load_certificate(cert_path);
      const std::int64_t s = threshold.value_or(seq.target.value_or(0));
      const auto board = replay_or_fail(seq.tau, cert);
      const std::int64_t got = kd::score(board);
      if (got >= s) {
        std::cout << "accepted: score " << got << " >= " << s << '\n';
        return kOk;
      }
      std::cout << "rejected: score " << got << " < " << s << '\n';
      return kRejected;
    } else if (*ext) {
      const auto seq = kd::load_sequence(seq_path);
      const auto r = kd::recognize_reduced(seq.tau);
      const auto board = replay_or_fail(seq.tau, kd::load_certificate(cert_path));
      const auto sol = kd::normalized(kd::extract_partition(r, board));
      for (const auto& bin : sol.bins) {
        std::cout << bin[0] << ' ' << bin[1] << ' ' << bin[2] << ' ' << bin[3] << '\n';
      }
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const kd::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const kd::ExtractionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExtraction;
  } catch (const kd::WitnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kWitness;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInstance;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
