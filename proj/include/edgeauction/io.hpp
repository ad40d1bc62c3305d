#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "edgeauction/baselines.hpp"
#include "edgeauction/mechanism.hpp"
#include "edgeauction/training.hpp"
#include "edgeauction/valuation.hpp"

namespace edgeauction {

inline constexpr std::string_view kToolName       = "edgeauction";
inline constexpr int              kCheckpointFormat = 1;

std::string_view tool_version();

/// Comment block written at the top of every output file:
///
///     # tool: edgeauction <version>
///     # config_hash: <16 hex digits>
///     # seed: <integer>
struct Provenance
{
  std::string   config_hash = "0000000000000000";
  std::uint64_t seed        = 0;
};

/// 64-bit FNV-1a of `text`, as 16 lower-case hex digits.
std::string fnv1a_hex(std::string_view text);

void write_provenance(std::ostream &out, Provenance const &prov);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
/// Strict parse of the whole token. Throws FormatError.
double parse_double(std::string_view token);

/// Versioned text checkpoint. After the provenance comments:
///
///     edgeauction-checkpoint 1
///     n <int>
///     k <int>
///     j <int>
///     kappa <float>
///     weights log|raw
///     alpha            ("w" when weights are raw)
///     <n*k rows of j floats, row-major (bidder, group)>
///     beta
///     <n*k rows of j floats>
///     end
///
/// "log" stores alpha = log w; "raw" stores the effective weights directly and
/// is written only for params that are not log-parameterized.
void      write_checkpoint(std::ostream &out, NetParams const &params, Provenance const &prov);
NetParams read_checkpoint(std::istream &in);
void      save_checkpoint(std::filesystem::path const &path, NetParams const &params, Provenance const &prov);
NetParams load_checkpoint(std::filesystem::path const &path);

/// Comma-separated profiles with header `v_1,...,v_N`, preceded by a
/// `# model t_min=.. t_max=.. c_min=.. c_max=.. seed=..` line.
void    write_dataset(std::ostream &out, Dataset const &data, Provenance const &prov);
Dataset read_dataset(std::istream &in);

/// Header `iteration,train_loss,test_revenue_soft,test_revenue_hard`.
void         write_trace(std::ostream &out, RevenueTrace const &trace, Provenance const &prov);
RevenueTrace read_trace(std::istream &in);

/// Header `c_1,win_prob,std_error`.
void write_sweep(std::ostream &out, SweepCurve const &curve, Provenance const &prov);

struct SummaryRow
{
  std::string scenario;
  double      spa_revenue     = 0.0;
  double      dl_revenue_soft = 0.0;
  double      dl_revenue_hard = 0.0;
};

/// Header `scenario,spa_revenue,dl_revenue_soft,dl_revenue_hard`.
void write_summary(std::ostream &out, std::vector<SummaryRow> const &rows, Provenance const &prov);

/// Splits a CSV data file into rows of fields, skipping `#` comment lines and
/// the header row, which must equal `expected_header`.
std::vector<std::vector<std::string>> read_table(std::istream &in, std::string_view expected_header);

}  // namespace edgeauction
