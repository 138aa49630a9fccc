#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "nnoma/experiment.hpp"

namespace nnoma {
namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::parse_error, field, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view text, const std::string& field) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (text.empty() || ec != std::errc() || ptr != end) parse_fail(field, "'" + std::string(text) + "' is not a number");
  return v;
}

std::uint64_t to_count(std::string_view text, const std::string& field) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) return v;
  // Also accept counts written in floating-point notation such as 1e6.
  const double d = to_double(text, field);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) parse_fail(field, "'" + std::string(text) + "' is not a count");
  return static_cast<std::uint64_t>(d);
}

bool to_bool(std::string_view text, const std::string& field) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  parse_fail(field, "'" + std::string(text) + "' is not a boolean");
}

template <std::size_t N>
std::array<double, N> to_fixed_list(std::string_view text, const std::string& field) {
  const auto parts = split(text, ',');
  if (parts.size() != N) parse_fail(field, "expected " + std::to_string(N) + " comma-separated values");
  std::array<double, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = to_double(parts[k], field);
  return out;
}

// Either a comma list or start:step:stop (inclusive).
std::vector<double> to_power_list(std::string_view text, const std::string& field) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) parse_fail(field, "range must be start:step:stop");
    const double start = to_double(parts[0], field);
    const double step = to_double(parts[1], field);
    const double stop = to_double(parts[2], field);
    if (!(step > 0.0) || !(stop >= start)) parse_fail(field, "range needs step > 0 and stop >= start");
    const double count = std::floor((stop - start) / step + 1e-9) + 1.0;
    if (count > 1e5) parse_fail(field, "range has too many points");
    for (int k = 0; k < static_cast<int>(count); ++k) out.push_back(start + k * step);
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(to_double(part, field));
  return out;
}

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

template <typename Range>
std::string join(const Range& values, int digits) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ", ";
    out += fmt(v, digits);
  }
  return out;
}

std::string sanitize_note(std::string note) {
  for (char& ch : note)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return note;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::optional<double> interference_power;
  std::optional<double> interference_intensity;
  std::optional<double> interference_window;
  std::optional<bool> share_positions;

  std::size_t line_no = 0;
  for (auto raw_line : split(text, '\n')) {
    ++line_no;
    const auto hash = raw_line.find('#');
    const auto line = trim(raw_line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail("line " + std::to_string(line_no), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) parse_fail(key, "key given twice");

    if (key == "name") c.name = std::string(value);
    else if (key == "side_length_m") c.side_length_m = to_double(value, key);
    else if (key == "big_radius_m") c.big_radius_m = to_double(value, key);
    else if (key == "near_radius_m") { const double r = to_double(value, key); c.near_radii_m = {r, r, r}; }
    else if (key == "near_radii_m") c.near_radii_m = to_fixed_list<kNumBs>(value, key);
    else if (key == "path_loss_exponent") c.path_loss_exponent = to_double(value, key);
    else if (key == "beta0_sq") c.beta0_sq = to_double(value, key);
    else if (key == "rates_bpcu") c.rates_bpcu = to_fixed_list<kNumUsers>(value, key);
    else if (key == "power_dbm_list") c.power_dbm_list = to_power_list(value, key);
    else if (key == "noise_psd_dbm_hz") c.noise_psd_dbm_hz = to_double(value, key);
    else if (key == "bandwidth_hz") c.bandwidth_hz = to_double(value, key);
    else if (key == "interference_power_dbm") interference_power = to_double(value, key);
    else if (key == "interference_intensity_per_m2") interference_intensity = to_double(value, key);
    else if (key == "interference_window_m") interference_window = to_double(value, key);
    else if (key == "share_interference_positions") share_positions = to_bool(value, key);
    else if (key == "schemes") {
      c.schemes.clear();
      for (auto part : split(value, ',')) {
        const auto s = parse_scheme(part);
        if (!s) parse_fail(key, "unknown scheme '" + std::string(part) + "' (n-noma, oma, noma-no-comp, noma-best-bs)");
        c.schemes.push_back(*s);
      }
    }
    else if (key == "trials") c.trials = to_count(value, key);
    else if (key == "seed") c.seed = to_count(value, key);
    else if (key == "threads") c.threads = static_cast<unsigned>(to_count(value, key));
    else if (key == "quadrature_nodes") c.quadrature_nodes = static_cast<int>(to_count(value, key));
    else parse_fail(key, "unknown key");
  }

  const bool any_interference = interference_power || interference_intensity || interference_window || share_positions;
  if (any_interference) {
    if (!interference_power)
      throw Error(ErrorCode::config_rejected, "interference_power_dbm", "required when interference is configured");
    if (!interference_intensity)
      throw Error(ErrorCode::config_rejected, "interference_intensity_per_m2", "required when interference is configured");
    InterferenceSettings s;
    s.power_dbm = *interference_power;
    s.intensity_per_m2 = *interference_intensity;
    s.window_m = interference_window.value_or(kDefaultInterferenceWindow);
    s.share_positions = share_positions.value_or(false);
    c.interference = s;
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "path", "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const ExperimentConfig& c) {
  std::vector<std::string> scheme_names;
  for (Scheme s : c.schemes) scheme_names.emplace_back(scheme_name(s));
  std::string schemes;
  for (const auto& s : scheme_names) schemes += (schemes.empty() ? "" : ", ") + s;

  std::ostringstream out;
  out << "name = " << c.name << "\n"
      << "side_length_m = " << fmt(c.side_length_m, 17) << "\n"
      << "big_radius_m = " << fmt(c.big_radius_m, 17) << "\n"
      << "near_radii_m = " << join(c.near_radii_m, 17) << "\n"
      << "path_loss_exponent = " << fmt(c.path_loss_exponent, 17) << "\n"
      << "beta0_sq = " << fmt(c.beta0_sq, 17) << "\n"
      << "rates_bpcu = " << join(c.rates_bpcu, 17) << "\n"
      << "power_dbm_list = " << join(c.power_dbm_list, 17) << "\n"
      << "noise_psd_dbm_hz = " << fmt(c.noise_psd_dbm_hz, 17) << "\n"
      << "bandwidth_hz = " << fmt(c.bandwidth_hz, 17) << "\n";
  if (c.interference) {
    out << "interference_power_dbm = " << fmt(c.interference->power_dbm, 17) << "\n"
        << "interference_intensity_per_m2 = " << fmt(c.interference->intensity_per_m2, 17) << "\n"
        << "interference_window_m = " << fmt(c.interference->window_m, 17) << "\n"
        << "share_interference_positions = " << (c.interference->share_positions ? "true" : "false") << "\n";
  }
  out << "schemes = " << schemes << "\n"
      << "trials = " << c.trials << "\n"
      << "seed = " << c.seed << "\n"
      << "threads = " << c.threads << "\n"
      << "quadrature_nodes = " << c.quadrature_nodes << "\n";
  return out.str();
}

static constexpr const char* kCsvHeader =
    "power_dbm,scheme,user_index,p_out_mc,ci_half_width,p_out_analytic,sum_rate_bpcu,regime_note";

void write_csv(const OutageTable& table, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const OutageRow& r : table) {
    out << fmt(r.power_dbm, 8) << ',' << scheme_name(r.scheme) << ',' << r.user_index << ','
        << fmt(r.estimate.p_hat, 8) << ',' << fmt(r.estimate.ci_half_width, 8) << ','
        << (r.estimate.analytic ? fmt(r.estimate.analytic->value, 8) : std::string()) << ','
        << fmt(r.sum_rate_bpcu, 8) << ',' << sanitize_note(r.regime_note) << "\n";
  }
}

void emit_csv(const OutageTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "path", "cannot write '" + path + "'");
  write_csv(table, out);
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "path", "write to '" + path + "' failed");
}

OutageTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) parse_fail("csv", "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) parse_fail("csv", "unexpected header '" + line + "'");
  OutageTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 8) parse_fail("csv", "expected 8 columns in '" + line + "'");
    OutageRow r;
    r.power_dbm = to_double(cells[0], "power_dbm");
    const auto scheme = parse_scheme(cells[1]);
    if (!scheme) parse_fail("scheme", "unknown scheme '" + std::string(cells[1]) + "'");
    r.scheme = *scheme;
    r.user_index = static_cast<int>(to_double(cells[2], "user_index"));
    r.estimate.p_hat = to_double(cells[3], "p_out_mc");
    r.estimate.ci_half_width = to_double(cells[4], "ci_half_width");
    if (!cells[5].empty()) {
      AnalyticOutage a;
      a.value = a.raw = to_double(cells[5], "p_out_analytic");
      a.regime_note = std::string(cells[7]);
      r.estimate.analytic = a;
    }
    r.sum_rate_bpcu = to_double(cells[6], "sum_rate_bpcu");
    r.regime_note = std::string(cells[7]);
    table.push_back(std::move(r));
  }
  return table;
}

void write_sum_rate_csv(const std::vector<SumRateRow>& rows, std::ostream& out) {
  out << "power_dbm,scheme,p_out_user0,p_out_user1,p_out_user2,p_out_user3,outage_sum_rate_bpcu,rate_loss_bpcu\n";
  for (const SumRateRow& r : rows) {
    out << fmt(r.power_dbm, 8) << ',' << scheme_name(r.scheme);
    for (std::size_t j = 0; j < kNumUsers; ++j)
      out << ',' << (j < r.user_outage.size() ? fmt(r.user_outage[j], 8) : std::string());
    out << ',' << fmt(r.outage_sum_rate, 8) << ',' << (r.rate_loss_bpcu ? fmt(*r.rate_loss_bpcu, 8) : std::string())
        << "\n";
  }
}

}  // namespace nnoma
