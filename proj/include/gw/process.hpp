#ifndef GW_PROCESS_HPP
#define GW_PROCESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gw/offspring.hpp"
#include "gw/rng.hpp"

namespace gw {

// Incomplete observation: generation totals Z_0..Z_n.  Zero is
// absorbing, so a zero entry must be the last one (trailing zeros are
// collapsed to a single terminal zero on construction).
struct GenerationSeries {
  std::vector<long long> z;

  explicit GenerationSeries(std::vector<long long> totals);
  int generations() const { return static_cast<int>(z.size()) - 1; }
};

// Complete observation: rows[i][j] = number of generation-i parents
// with exactly j offspring; all rows padded to a common width k+1.
struct OffspringCounts {
  std::vector<std::vector<long long>> rows;

  int max_offspring() const {
    return rows.empty() ? 0 : static_cast<int>(rows.front().size()) - 1;
  }
  // column sums: total count of parents with j offspring, any generation
  std::vector<long long> column_sums() const;
  void validate() const;  // throws when a row/children total is inconsistent
};

// Simulates one realization, drawing one offspring count per parent so
// the Z_ij breakdown is available.  Stops at extinction or after
// max_generations parent generations; a generation above explosion_cap
// aborts with an error.
OffspringCounts simulate_complete(const OffspringDistribution& dist,
                                  long long z0, int max_generations,
                                  SeedSpec seed,
                                  long long explosion_cap = 10'000'000);

GenerationSeries collapse(const OffspringCounts& counts);

// Number of individuals with recorded offspring, sum of Z_0..Z_{n-1}.
long long total_parents(const GenerationSeries& series);
long long total_parents(const OffspringCounts& counts);
long long total_children(const GenerationSeries& series);

// CSV formats: complete "generation,j0,j1,...,jk"; incomplete
// "generation,count".
void write_complete_csv(std::ostream& os, const OffspringCounts& counts);
void write_series_csv(std::ostream& os, const GenerationSeries& series);
OffspringCounts read_complete_csv(std::istream& is);
GenerationSeries read_series_csv(std::istream& is);

}  // namespace gw

#endif
