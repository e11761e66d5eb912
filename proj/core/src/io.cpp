#include "kingdomino/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kingdomino {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

struct Line {
  int number = 0;
  std::string text;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

// Data lines only; comments go to `comments` when given.
std::vector<Line> data_lines(std::istream& in, std::vector<Line>* comments = nullptr) {
  std::vector<Line> out;
  std::string text;
  for (int n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (text[first] == '#') {
      if (comments != nullptr) comments->push_back({n, text.substr(first + 1), {}});
      continue;
    }
    out.push_back({n, text, split(text)});
  }
  return out;
}

std::int64_t to_int(const Line& line, const std::string& tok) {
  std::int64_t v = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  return v;
}

std::int32_t to_coord(const Line& line, const std::string& tok) {
  const std::int64_t v = to_int(line, tok);
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(line.number, "coordinate out of range");
  return static_cast<std::int32_t>(v);
}

void expect_tokens(const Line& line, std::size_t n, const char* what) {
  if (line.tokens.size() != n) {
    throw ParseError(line.number, std::string("expected ") + what + ", got " +
                                      std::to_string(line.tokens.size()) + " fields");
  }
}

template <typename T>
T load(const std::filesystem::path& path, T (*parse)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return parse(in);
}

}  // namespace

SequenceFile parse_sequence(std::istream& in) {
  std::vector<Line> comments;
  const std::vector<Line> lines = data_lines(in, &comments);
  SequenceFile file;
  for (const Line& line : lines) {
    expect_tokens(line, 4, "four fields 'c1 k1 c2 k2'");
    std::int64_t v[4];
    for (int i = 0; i < 4; ++i) v[i] = to_int(line, line.tokens[i]);
    if (v[0] < 1 || v[2] < 1) throw ParseError(line.number, "colors must be >= 1");
    if (v[1] < 0 || v[3] < 0) throw ParseError(line.number, "crowns must be >= 0");
    if (v[0] > INT32_MAX || v[1] > INT32_MAX || v[2] > INT32_MAX || v[3] > INT32_MAX) {
      throw ParseError(line.number, "value out of range");
    }
    file.tau.push_back(make_domino(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                                   static_cast<int>(v[3])));
  }
  for (const Line& c : comments) {
    const auto toks = split(c.text);
    if (toks.size() == 1 && toks[0].starts_with("s=")) {
      Line l = c;
      file.target = to_int(l, toks[0].substr(2));
    }
  }
  return file;
}

void write_sequence(std::ostream& out, const SequenceFile& file) {
  for (const Domino& d : file.tau) {
    out << d.first.color.value() << ' ' << d.first.crowns << ' ' << d.second.color.value() << ' '
        << d.second.crowns << '\n';
  }
  if (file.target) out << "# s=" << *file.target << '\n';
}

void write_reduced(std::ostream& out, const ReducedInstance& r) {
  out << "# reduced 4-Partition instance: m=" << r.m << " n=" << r.n << " k=" << r.k << " scale=" << r.scale
      << " dominoes=" << r.tau.size() << '\n';
  for (const std::string& w : r.warnings) out << "# warning: " << w << '\n';
  for (std::size_t i = 0; i < r.tau.size(); ++i) {
    if (i == 0 || !(r.tags[i] == r.tags[i - 1])) {
      out << "# " << to_string(r.tags[i].group);
      if (r.tags[i].index > 0) {
        switch (r.tags[i].group) {
          case Gadget::kItems:
            out << " item " << r.tags[i].index << " size " << r.sizes[r.tags[i].index - 1];
            break;
          case Gadget::kArms:
            out << " stack " << r.tags[i].index - 1;
            break;
          default:
            out << " bin " << r.tags[i].index;
        }
      }
      out << '\n';
    }
    const Domino& d = r.tau[i];
    out << d.first.color.value() << ' ' << d.first.crowns << ' ' << d.second.color.value() << ' '
        << d.second.crowns << '\n';
  }
  out << "# s=" << r.s << '\n';
}

Certificate parse_certificate(std::istream& in) {
  Certificate cert;
  for (const Line& line : data_lines(in)) {
    if (line.tokens.empty()) continue;
    const std::int64_t index = to_int(line, line.tokens[0]);
    if (index != static_cast<std::int64_t>(cert.choices.size())) {
      throw ParseError(line.number, "expected index " + std::to_string(cert.choices.size()) + ", got " +
                                        std::to_string(index));
    }
    if (line.tokens.size() == 2 && line.tokens[1] == "-") {
      cert.choices.emplace_back(Discard{});
      continue;
    }
    expect_tokens(line, 5, "'i xa ya xb yb' or 'i -'");
    const Placement p{{to_coord(line, line.tokens[1]), to_coord(line, line.tokens[2])},
                      {to_coord(line, line.tokens[3]), to_coord(line, line.tokens[4])}};
    if (!edge_adjacent(p.first, p.second)) throw ParseError(line.number, "cells are not edge-adjacent");
    cert.choices.emplace_back(p);
  }
  return cert;
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  for (std::size_t i = 0; i < cert.choices.size(); ++i) {
    out << i;
    if (const auto* p = std::get_if<Placement>(&cert.choices[i])) {
      out << ' ' << p->first.x << ' ' << p->first.y << ' ' << p->second.x << ' ' << p->second.y << '\n';
    } else {
      out << " -\n";
    }
  }
}

PartitionFile parse_partition(std::istream& in) {
  const std::vector<Line> lines = data_lines(in);
  if (lines.empty()) throw ParseError(0, "empty partition file");
  expect_tokens(lines[0], 2, "'n k'");
  const std::int64_t n = to_int(lines[0], lines[0].tokens[0]);
  const std::int64_t k = to_int(lines[0], lines[0].tokens[1]);
  if (n <= 0) throw ParseError(lines[0].number, "n must be positive");
  if (lines.size() < 2) throw ParseError(lines[0].number, "missing sizes line");
  if (static_cast<std::int64_t>(lines[1].tokens.size()) != n) {
    throw ParseError(lines[1].number, "expected " + std::to_string(n) + " sizes, got " +
                                          std::to_string(lines[1].tokens.size()));
  }
  std::vector<std::int64_t> sizes;
  for (const std::string& t : lines[1].tokens) sizes.push_back(to_int(lines[1], t));
  std::optional<FourPartitionInstance> inst;
  try {
    inst.emplace(std::move(sizes), k);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines[1].number, e.what());
  }
  PartitionFile file{*inst, std::nullopt};
  if (lines.size() > 2) {
    PartitionSolution sol;
    for (std::size_t l = 2; l < lines.size(); ++l) {
      expect_tokens(lines[l], 4, "four item indices");
      std::array<int, 4> bin{};
      for (int t = 0; t < 4; ++t) {
        const std::int64_t v = to_int(lines[l], lines[l].tokens[t]);
        if (v < 1 || v > n) throw ParseError(lines[l].number, "item index out of range");
        bin[t] = static_cast<int>(v);
      }
      sol.bins.push_back(bin);
    }
    try {
      validate_solution(*inst, sol);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lines.back().number, e.what());
    }
    file.solution = std::move(sol);
  }
  return file;
}

void write_partition(std::ostream& out, const PartitionFile& file) {
  const FourPartitionInstance& inst = file.instance;
  out << inst.n() << ' ' << inst.k() << '\n';
  for (int i = 0; i < inst.n(); ++i) out << (i ? " " : "") << inst.sizes()[i];
  out << '\n';
  if (file.solution) {
    for (const auto& bin : file.solution->bins) {
      out << bin[0] << ' ' << bin[1] << ' ' << bin[2] << ' ' << bin[3] << '\n';
    }
  }
}

SequenceFile load_sequence(const std::filesystem::path& path) { return load(path, &parse_sequence); }
Certificate load_certificate(const std::filesystem::path& path) { return load(path, &parse_certificate); }
PartitionFile load_partition(const std::filesystem::path& path) { return load(path, &parse_partition); }

}  // namespace kingdomino
