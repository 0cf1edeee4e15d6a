#include "gw/process.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gw {

GenerationSeries::GenerationSeries(std::vector<long long> totals)
    : z(std::move(totals)) {
  if (z.empty()) throw std::invalid_argument("series: empty");
  if (z[0] < 1) throw std::invalid_argument("series: Z_0 must be >= 1");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0) throw std::invalid_argument("series: negative total");
    if (z[i] == 0) {
      for (std::size_t r = i + 1; r < z.size(); ++r)
        if (z[r] != 0)
          throw std::invalid_argument("series: zero state must be absorbing");
      z.resize(i + 1);
      break;
    }
  }
}

std::vector<long long> OffspringCounts::column_sums() const {
  std::vector<long long> sums(max_offspring() + 1, 0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) sums[j] += row[j];
  return sums;
}

void OffspringCounts::validate() const {
  if (rows.empty()) return;
  const std::size_t width = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width)
      throw std::invalid_argument("counts: ragged rows");
    long long parents = 0, children = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (rows[i][j] < 0) throw std::invalid_argument("counts: negative entry");
      parents += rows[i][j];
      children += static_cast<long long>(j) * rows[i][j];
    }
    if (i + 1 < rows.size()) {
      long long next = 0;
      for (long long v : rows[i + 1]) next += v;
      if (children != next)
        throw std::invalid_argument(
            "counts: children of generation " + std::to_string(i) +
            " do not match the next row total");
    }
  }
}

OffspringCounts simulate_complete(const OffspringDistribution& dist,
                                  long long z0, int max_generations,
                                  SeedSpec seed, long long explosion_cap) {
  if (z0 < 1) throw std::invalid_argument("simulate: z0 must be >= 1");
  if (max_generations < 1)
    throw std::invalid_argument("simulate: max_generations must be >= 1");
  RngStream rng(seed);
  OffspringCounts counts;
  long long current = z0;
  int k = 0;
  for (int gen = 0; gen < max_generations && current > 0; ++gen) {
    std::vector<long long> row;
    long long next = 0;
    for (long long parent = 0; parent < current; ++parent) {
      long long j = dist.sample(rng);
      if (j >= static_cast<long long>(row.size())) row.resize(j + 1, 0);
      ++row[j];
      next += j;
    }
    if (next > explosion_cap)
      throw std::runtime_error(
          "simulate: generation " + std::to_string(gen + 1) + " exceeds cap of " +
          std::to_string(explosion_cap) + " individuals");
    k = std::max<int>(k, static_cast<int>(row.size()) - 1);
    counts.rows.push_back(std::move(row));
    current = next;
  }
  for (auto& row : counts.rows) row.resize(k + 1, 0);
  return counts;
}

GenerationSeries collapse(const OffspringCounts& counts) {
  if (counts.rows.empty()) throw std::invalid_argument("collapse: no rows");
  std::vector<long long> z;
  long long children = 0;
  for (const auto& row : counts.rows) {
    long long total = 0;
    children = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      total += row[j];
      children += static_cast<long long>(j) * row[j];
    }
    z.push_back(total);
  }
  z.push_back(children);
  return GenerationSeries(std::move(z));
}

long long total_parents(const GenerationSeries& series) {
  long long total = 0;
  for (std::size_t i = 0; i + 1 < series.z.size(); ++i) total += series.z[i];
  return total;
}

long long total_parents(const OffspringCounts& counts) {
  long long total = 0;
  for (const auto& row : counts.rows)
    for (long long v : row) total += v;
  return total;
}

long long total_children(const GenerationSeries& series) {
  long long total = 0;
  for (std::size_t i = 1; i < series.z.size(); ++i) total += series.z[i];
  return total;
}

void write_complete_csv(std::ostream& os, const OffspringCounts& counts) {
  os << "generation";
  for (int j = 0; j <= counts.max_offspring(); ++j) os << ",j" << j;
  os << '\n';
  for (std::size_t i = 0; i < counts.rows.size(); ++i) {
    os << i;
    for (long long v : counts.rows[i]) os << ',' << v;
    os << '\n';
  }
}

void write_series_csv(std::ostream& os, const GenerationSeries& series) {
  os << "generation,count\n";
  for (std::size_t i = 0; i < series.z.size(); ++i)
    os << i << ',' << series.z[i] << '\n';
}

OffspringCounts read_complete_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("generation,j0", 0) != 0)
    throw std::runtime_error("complete csv: bad header");
  OffspringCounts counts;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<long long> fields;
    while (std::getline(ss, tok, ',')) {
      try {
        fields.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        throw std::runtime_error("complete csv: unparseable value at line " +
                                 std::to_string(lineno));
      }
    }
    if (fields.size() < 2)
      throw std::runtime_error("complete csv: short row at line " +
                               std::to_string(lineno));
    counts.rows.emplace_back(fields.begin() + 1, fields.end());
  }
  counts.validate();
  return counts;
}

GenerationSeries read_series_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("generation,count", 0) != 0)
    throw std::runtime_error("series csv: bad header");
  std::vector<long long> z;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("series csv: bad row at line " +
                               std::to_string(lineno));
    try {
      z.push_back(std::stoll(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error("series csv: unparseable count at line " +
                               std::to_string(lineno));
    }
  }
  return GenerationSeries(std::move(z));
}

}  // namespace gw
