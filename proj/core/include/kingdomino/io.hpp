#ifndef KINGDOMINO_IO_HPP_
#define KINGDOMINO_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kingdomino/reduction.hpp"
#include "kingdomino/types.hpp"
#include "kingdomino/verify.hpp"
#include "kingdomino/witness.hpp"

namespace kingdomino {

// Plain-text formats. Lines starting with '#' are comments everywhere;
// blank lines are ignored.

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }  // 1-based; 0 when not tied to a line

 private:
  int line_;
};

// One domino per data line: "c1 k1 c2 k2".
struct SequenceFile {
  std::vector<Domino> tau;
  std::optional<std::int64_t> target;  // from a "# s=<int>" comment
  bool operator==(const SequenceFile&) const = default;
};

SequenceFile parse_sequence(std::istream& in);
void write_sequence(std::ostream& out, const SequenceFile& file);
// Same data lines, with a comment before each gadget group and the target
// score as a trailer.
void write_reduced(std::ostream& out, const ReducedInstance& r);

// One line per domino: "i xa ya xb yb" or "i -".
Certificate parse_certificate(std::istream& in);
void write_certificate(std::ostream& out, const Certificate& cert);

// "n k", then the n sizes, then optionally m lines of four 1-based item
// indices.
struct PartitionFile {
  FourPartitionInstance instance;
  std::optional<PartitionSolution> solution;
  bool operator==(const PartitionFile&) const = default;
};

PartitionFile parse_partition(std::istream& in);
void write_partition(std::ostream& out, const PartitionFile& file);

SequenceFile load_sequence(const std::filesystem::path& path);
Certificate load_certificate(const std::filesystem::path& path);
PartitionFile load_partition(const std::filesystem::path& path);

}  // namespace kingdomino

#endif  // KINGDOMINO_IO_HPP_
