#include "edgeauction/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "edgeauction/errors.hpp"

#ifndef EDGEAUCTION_VERSION
#define EDGEAUCTION_VERSION "0.0.0"
#endif

namespace edgeauction {

namespace {

std::vector<std::string> split(std::string_view text, char sep)
{
  std::vector<std::string> out;
  std::size_t              start = 0;
  while (true)
  {
    std::size_t const pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos)
    {
      break;
    }
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> words(std::string const &line)
{
  std::istringstream       ss(line);
  std::vector<std::string> out;
  std::string              w;
  while (ss >> w)
  {
    out.push_back(w);
  }
  return out;
}

std::string strip_cr(std::string line)
{
  if (!line.empty() && line.back() == '\r')
  {
    line.pop_back();
  }
  return line;
}

/// Line reader that skips blank and `#` lines and tracks line numbers.
class LineReader
{
public:
  explicit LineReader(std::istream &in)
    : in_(in)
  {}

  bool next(std::string &line)
  {
    while (std::getline(in_, line))
    {
      ++number_;
      line = strip_cr(std::move(line));
      if (!line.empty() && line.front() != '#')
      {
        return true;
      }
    }
    return false;
  }

  std::string expect(std::string_view what)
  {
    std::string line;
    if (!next(line))
    {
      throw FormatError("unexpected end of file, expected " + std::string(what));
    }
    return line;
  }

  [[noreturn]] void fail(std::string const &message) const
  {
    throw FormatError("line " + std::to_string(number_) + ": " + message);
  }

  std::size_t number() const
  {
    return number_;
  }

private:
  std::istream &in_;
  std::size_t   number_ = 0;
};

std::uint64_t parse_unsigned(std::string_view token)
{
  std::uint64_t value = 0;
  auto const [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
  {
    throw FormatError("expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_count(LineReader const &reader, std::string const &token)
{
  try
  {
    return static_cast<std::size_t>(parse_unsigned(token));
  }
  catch (FormatError const &e)
  {
    reader.fail(e.what());
  }
}

std::string keyed_value(LineReader &reader, std::string_view key)
{
  auto const parts = words(reader.expect(key));
  if (parts.size() != 2 || parts[0] != key)
  {
    reader.fail("expected '" + std::string(key) + " <value>'");
  }
  return parts[1];
}

std::vector<double> read_tensor(LineReader &reader, std::size_t rows, std::size_t cols)
{
  std::vector<double> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
  {
    auto const parts = words(reader.expect("tensor row"));
    if (parts.size() != cols)
    {
      reader.fail("expected " + std::to_string(cols) + " values, got " + std::to_string(parts.size()));
    }
    for (auto const &p : parts)
    {
      try
      {
        out.push_back(parse_double(p));
      }
      catch (FormatError const &e)
      {
        reader.fail(e.what());
      }
    }
  }
  return out;
}

void write_tensor(std::ostream &out, std::span<double const> values, std::size_t cols)
{
  for (std::size_t idx = 0; idx < values.size(); ++idx)
  {
    out << format_double(values[idx]) << ((idx + 1) % cols == 0 ? '\n' : ' ');
  }
}

}  // namespace

std::string_view tool_version()
{
  return EDGEAUCTION_VERSION;
}

std::string fnv1a_hex(std::string_view text)
{
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text)
  {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << hash;
  return ss.str();
}

void write_provenance(std::ostream &out, Provenance const &prov)
{
  out << "# tool: " << kToolName << ' ' << tool_version() << '\n'
      << "# config_hash: " << prov.config_hash << '\n'
      << "# seed: " << prov.seed << '\n';
}

std::string format_double(double value)
{
  char buf[64];
  auto const [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
  {
    throw NumericError("cannot format double");
  }
  return std::string(buf, ptr);
}

double parse_double(std::string_view token)
{
  double value = 0.0;
  auto const [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
  {
    throw FormatError("invalid number '" + std::string(token) + "'");
  }
  return value;
}

void write_checkpoint(std::ostream &out, NetParams const &params, Provenance const &prov)
{
  auto const &cfg = params.config();
  write_provenance(out, prov);
  out << kToolName << "-checkpoint " << kCheckpointFormat << '\n'
      << "n " << cfg.n << '\n'
      << "k " << cfg.k << '\n'
      << "j " << cfg.j << '\n'
      << "kappa " << format_double(cfg.kappa) << '\n';
  if (params.log_parameterized())
  {
    out << "weights log\nalpha\n";
    write_tensor(out, params.alpha(), cfg.j);
  }
  else
  {
    out << "weights raw\nw\n";
    write_tensor(out, params.weights(), cfg.j);
  }
  out << "beta\n";
  write_tensor(out, params.beta(), cfg.j);
  out << "end\n";
}

NetParams read_checkpoint(std::istream &in)
{
  LineReader reader(in);
  auto const magic = words(reader.expect("checkpoint magic"));
  if (magic.size() != 2 || magic[0] != std::string(kToolName) + "-checkpoint")
  {
    reader.fail("not an edgeauction checkpoint");
  }
  if (magic[1] != std::to_string(kCheckpointFormat))
  {
    reader.fail("unsupported checkpoint format version " + magic[1]);
  }
  NetConfig cfg;
  cfg.n = parse_count(reader, keyed_value(reader, "n"));
  cfg.k = parse_count(reader, keyed_value(reader, "k"));
  cfg.j = parse_count(reader, keyed_value(reader, "j"));
  try
  {
    cfg.kappa = parse_double(keyed_value(reader, "kappa"));
    cfg.validate();
  }
  catch (std::exception const &e)
  {
    reader.fail(e.what());
  }
  std::string const mode = keyed_value(reader, "weights");
  if (mode != "log" && mode != "raw")
  {
    reader.fail("weights must be 'log' or 'raw'");
  }
  std::size_t const rows = cfg.n * cfg.k;
  if (reader.expect("tensor name") != (mode == "log" ? "alpha" : "w"))
  {
    reader.fail(mode == "log" ? "expected 'alpha'" : "expected 'w'");
  }
  auto first = read_tensor(reader, rows, cfg.j);
  if (reader.expect("beta") != "beta")
  {
    reader.fail("expected 'beta'");
  }
  auto beta = read_tensor(reader, rows, cfg.j);
  if (reader.expect("end") != "end")
  {
    reader.fail("expected 'end'");
  }
  try
  {
    return mode == "log" ? NetParams(cfg, std::move(first), std::move(beta))
                         : NetParams::from_weights(cfg, std::move(first), std::move(beta));
  }
  catch (std::exception const &e)
  {
    throw FormatError(std::string("invalid checkpoint parameters: ") + e.what());
  }
}

void save_checkpoint(std::filesystem::path const &path, NetParams const &params, Provenance const &prov)
{
  std::ofstream out(path);
  if (!out)
  {
    throw FormatError("cannot write " + path.string());
  }
  write_checkpoint(out, params, prov);
}

NetParams load_checkpoint(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw FormatError("cannot read " + path.string());
  }
  try
  {
    return read_checkpoint(in);
  }
  catch (FormatError const &e)
  {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_dataset(std::ostream &out, Dataset const &data, Provenance const &prov)
{
  data.validate();
  write_provenance(out, prov);
  out << "# model t_min=" << format_double(data.model.t_min) << " t_max=" << format_double(data.model.t_max)
      << " c_min=" << format_double(data.model.c_min) << " c_max=" << format_double(data.model.c_max)
      << " seed=" << data.seed << '\n';
  for (std::size_t i = 0; i < data.bidders(); ++i)
  {
    out << (i ? "," : "") << "v_" << i + 1;
  }
  out << '\n';
  for (auto const &p : data.profiles)
  {
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      out << (i ? "," : "") << format_double(p.values[i]);
    }
    out << '\n';
  }
}

Dataset read_dataset(std::istream &in)
{
  Dataset     data;
  bool        have_model = false;
  bool        have_header = false;
  std::size_t n      = 0;
  std::size_t number = 0;
  std::string line;
  auto fail = [&](std::string const &message) {
    throw FormatError("line " + std::to_string(number) + ": " + message);
  };
  while (std::getline(in, line))
  {
    ++number;
    line = strip_cr(std::move(line));
    if (line.empty())
    {
      continue;
    }
    if (line.rfind("# model ", 0) == 0)
    {
      auto const fields = words(line.substr(8));
      if (fields.size() != 5)
      {
        fail("model line needs t_min, t_max, c_min, c_max and seed");
      }
      std::string const keys[] = {"t_min=", "t_max=", "c_min=", "c_max=", "seed="};
      double           *slots[] = {&data.model.t_min, &data.model.t_max, &data.model.c_min, &data.model.c_max};
      for (std::size_t f = 0; f < 5; ++f)
      {
        if (fields[f].rfind(keys[f], 0) != 0)
        {
          fail("expected '" + keys[f] + "'");
        }
        std::string const value = fields[f].substr(keys[f].size());
        try
        {
          if (f < 4)
          {
            *slots[f] = parse_double(value);
          }
          else
          {
            data.seed = parse_unsigned(value);
          }
        }
        catch (FormatError const &e)
        {
          fail(e.what());
        }
      }
      have_model = true;
      continue;
    }
    if (line.front() == '#')
    {
      continue;
    }
    auto const fields = split(line, ',');
    if (!have_header)
    {
      n = fields.size();
      for (std::size_t i = 0; i < n; ++i)
      {
        if (fields[i] != "v_" + std::to_string(i + 1))
        {
          fail("expected header v_1,...,v_N");
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != n)
    {
      fail("expected " + std::to_string(n) + " values, got " + std::to_string(fields.size()));
    }
    ValuationProfile p;
    for (auto const &f : fields)
    {
      try
      {
        p.values.push_back(parse_double(f));
      }
      catch (FormatError const &e)
      {
        fail(e.what());
      }
      if (p.values.back() < 0.0)
      {
        fail("valuations must be non-negative");
      }
    }
    data.profiles.push_back(std::move(p));
  }
  if (!have_model)
  {
    throw FormatError("dataset is missing the '# model' line");
  }
  if (data.profiles.empty())
  {
    throw FormatError("dataset has no profiles");
  }
  try
  {
    data.model.validate();
  }
  catch (ConfigError const &e)
  {
    throw FormatError(e.what());
  }
  return data;
}

void write_trace(std::ostream &out, RevenueTrace const &trace, Provenance const &prov)
{
  write_provenance(out, prov);
  out << "iteration,train_loss,test_revenue_soft,test_revenue_hard\n";
  for (auto const &cp : trace.checkpoints)
  {
    out << cp.iteration << ',' << format_double(cp.train_loss) << ',' << format_double(cp.test_revenue_soft) << ','
        << format_double(cp.test_revenue_hard) << '\n';
  }
}

std::vector<std::vector<std::string>> read_table(std::istream &in, std::string_view expected_header)
{
  std::vector<std::vector<std::string>> rows;
  LineReader                            reader(in);
  std::string                           line;
  if (!reader.next(line))
  {
    throw FormatError("empty table");
  }
  if (line != expected_header)
  {
    reader.fail("expected header '" + std::string(expected_header) + "'");
  }
  std::size_t const cols = split(expected_header, ',').size();
  while (reader.next(line))
  {
    auto fields = split(line, ',');
    if (fields.size() != cols)
    {
      reader.fail("expected " + std::to_string(cols) + " fields");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

RevenueTrace read_trace(std::istream &in)
{
  RevenueTrace trace;
  auto const   rows = read_table(in, "iteration,train_loss,test_revenue_soft,test_revenue_hard");
  for (auto const &r : rows)
  {
    trace.checkpoints.push_back({static_cast<std::size_t>(parse_unsigned(r[0])), parse_double(r[1]),
                                 parse_double(r[2]), parse_double(r[3])});
  }
  return trace;
}

void write_sweep(std::ostream &out, SweepCurve const &curve, Provenance const &prov)
{
  write_provenance(out, prov);
  out << "c_1,win_prob,std_error\n";
  for (auto const &p : curve.points)
  {
    out << format_double(p.c1) << ',' << format_double(p.win_prob) << ',' << format_double(p.std_error) << '\n';
  }
}

void write_summary(std::ostream &out, std::vector<SummaryRow> const &rows, Provenance const &prov)
{
  write_provenance(out, prov);
  out << "scenario,spa_revenue,dl_revenue_soft,dl_revenue_hard\n";
  for (auto const &r : rows)
  {
    out << r.scenario << ',' << format_double(r.spa_revenue) << ',' << format_double(r.dl_revenue_soft) << ','
        << format_double(r.dl_revenue_hard) << '\n';
  }
}

}  // namespace edgeauction
