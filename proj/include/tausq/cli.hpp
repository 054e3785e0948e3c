#pragma once

// Command-line driver. Subcommands: mine, verify, gen, bench.
//
// Exit codes:
//   0 success (verify: no discrepancy)
//   1 verify found a discrepancy with the SRAU bound
//   2 usage or parse error
//   3 mine: no sequence contains the target
//   4 verify: oracle budget exceeded
//   5 verify: the vSRAU bound diverged from the oracle (reproducer printed)

#include <iosfwd>
#include <string>
#include <vector>

#include "tausq/core_model.hpp"
#include "tausq/miner.hpp"

namespace tausq {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One line per pattern: labels, au as fraction, au as decimal.
std::string patterns_tsv(const QDatabase& db, const std::vector<MinedPattern>& patterns);

/// au in profit units: utility / (|P| * scale).
Rational report_au(const MinedPattern& p, std::int64_t scale);

/// Peak resident set size in KiB, 0 when unavailable.
std::int64_t peak_rss_kb();

}  // namespace tausq
