#include "nft/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace nft {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(x)) {
    std::ostringstream os;
    os << "pulse CSV line " << line << ": cannot parse '" << field << "' as a number";
    throw InvalidInput(os.str());
  }
  return x;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() ||
      !j["im"].is_number())
    throw InvalidInput(std::string("spectrum JSON: ") + what + " entries need numeric re and im");
  return {j["re"].get<double>(), j["im"].get<double>()};
}

std::vector<cplx> complex_list(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const json& arr = doc[key];
  if (!arr.is_array()) throw InvalidInput(std::string("spectrum JSON: '") + key + "' must be an array");
  std::vector<cplx> out;
  for (const auto& e : arr) out.push_back(complex_from(e, key));
  return out;
}

// null stands for a missing (NaN) value.
double number_or_nan(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw InvalidInput("spectrum JSON: qc arrays must hold numbers or null");
  return j.get<double>();
}

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

PulseFile read_pulse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<double> t;
  std::vector<cplx> q;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      std::string compact;
      std::remove_copy_if(row.begin(), row.end(), std::back_inserter(compact),
                          [](char c) { return c == ' ' || c == '\t'; });
      if (compact != "t,re_q,im_q") throw InvalidInput("pulse CSV must start with header t,re_q,im_q");
      header = true;
      continue;
    }
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      std::ostringstream os;
      os << "pulse CSV line " << line_no << ": expected 3 columns";
      throw InvalidInput(os.str());
    }
    t.push_back(parse_field(row.substr(0, c1), line_no));
    q.emplace_back(parse_field(row.substr(c1 + 1, c2 - c1 - 1), line_no),
                   parse_field(row.substr(c2 + 1), line_no));
  }
  if (!header) throw InvalidInput("pulse CSV is empty");
  if (t.size() < 3) throw InvalidInput("pulse CSV needs at least three samples");

  const std::size_t N = t.size() - 1;
  const double span = t.back() - t.front();
  if (!(span > 0.0)) throw InvalidInput("pulse CSV: t must increase");
  const double h = span / static_cast<double>(N);
  const double tol = 1e-6 * h;
  for (std::size_t n = 0; n <= N; ++n) {
    if (std::abs(t[n] - (t.front() + static_cast<double>(n) * h)) > tol) {
      std::ostringstream os;
      os << "pulse CSV: t is not uniformly sampled (row " << n + 1 << ")";
      throw InvalidInput(os.str());
    }
  }
  double centre = 0.5 * (t.front() + t.back());
  if (std::abs(centre) <= tol) centre = 0.0;
  return {SampledPulse(0.5 * span, std::move(q)), centre};
}

PulseFile read_pulse_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pulse_csv(in);
}

void write_pulse_csv(std::ostream& out, const SampledPulse& pulse, double t_shift) {
  out << "t,re_q,im_q\n";
  for (std::size_t n = 0; n < pulse.n_samples(); ++n) {
    out << format_double(pulse.time(n) + t_shift) << ',' << format_double(pulse[n].real()) << ','
        << format_double(pulse[n].imag()) << '\n';
  }
}

void write_pulse_csv(const std::filesystem::path& path, const SampledPulse& pulse, double t_shift) {
  auto out = open_out(path);
  write_pulse_csv(out, pulse, t_shift);
}

NonlinearSpectrum read_spectrum_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed spectrum JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("spectrum JSON must be an object");

  const auto lambdas = complex_list(doc, "eigenvalues");
  const auto qd = complex_list(doc, "qd");
  const auto b = complex_list(doc, "b");
  if (qd.size() != lambdas.size())
    throw InvalidInput("spectrum JSON: 'eigenvalues' and 'qd' differ in length");
  const bool has_b = doc.contains("b");
  if (has_b && b.size() != lambdas.size())
    throw InvalidInput("spectrum JSON: 'b' and 'eigenvalues' differ in length");

  std::vector<DiscretePoint> pts;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    pts.push_back({lambdas[i], qd[i], has_b ? std::optional<cplx>(b[i]) : std::nullopt});
  NonlinearSpectrum spec{DiscreteSpectrum(std::move(pts)), std::nullopt};

  if (doc.contains("qc") && !doc["qc"].is_null()) {
    const json& qc = doc["qc"];
    if (!qc.is_object() || !qc.contains("lambda") || !qc.contains("re") || !qc.contains("im") ||
        !qc["lambda"].is_array() || !qc["re"].is_array() || !qc["im"].is_array())
      throw InvalidInput("spectrum JSON: 'qc' needs arrays lambda, re and im");
    const std::size_t n = qc["lambda"].size();
    if (qc["re"].size() != n || qc["im"].size() != n)
      throw InvalidInput("spectrum JSON: qc arrays differ in length");
    std::vector<double> grid(n);
    std::vector<cplx> values(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!qc["lambda"][k].is_number()) throw InvalidInput("spectrum JSON: qc lambda must be numeric");
      grid[k] = qc["lambda"][k].get<double>();
      values[k] = {number_or_nan(qc["re"][k]), number_or_nan(qc["im"][k])};
    }
    spec.continuous = ContinuousSpectrum(std::move(grid), std::move(values));
  }
  return spec;
}

NonlinearSpectrum read_spectrum_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_spectrum_json(in);
}

nlohmann::ordered_json spectrum_to_json(const NonlinearSpectrum& spectrum,
                                        const nlohmann::ordered_json& metadata) {
  json doc = json::object();
  json eig = json::array(), qd = json::array(), b = json::array();
  bool all_b = true;
  for (const auto& p : spectrum.discrete.points()) {
    eig.push_back(complex_json(p.lambda));
    qd.push_back(complex_json(p.qd));
    if (p.b)
      b.push_back(complex_json(*p.b));
    else
      all_b = false;
  }
  doc["eigenvalues"] = std::move(eig);
  doc["qd"] = std::move(qd);
  if (all_b && !spectrum.discrete.empty()) doc["b"] = std::move(b);
  if (spectrum.continuous) {
    json lam = json::array(), re = json::array(), im = json::array();
    const auto& cs = *spectrum.continuous;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      lam.push_back(cs.lambda_grid()[k]);
      re.push_back(number_or_null(cs.qc()[k].real()));
      im.push_back(number_or_null(cs.qc()[k].imag()));
    }
    doc["qc"] = json{{"lambda", std::move(lam)}, {"re", std::move(re)}, {"im", std::move(im)}};
  }
  if (!metadata.is_null()) doc["metadata"] = metadata;
  return doc;
}

void write_spectrum_json(std::ostream& out, const NonlinearSpectrum& spectrum,
                         const nlohmann::ordered_json& metadata) {
  out << spectrum_to_json(spectrum, metadata).dump(2) << '\n';
}

void write_spectrum_json(const std::filesystem::path& path, const NonlinearSpectrum& spectrum,
                         const nlohmann::ordered_json& metadata) {
  auto out = open_out(path);
  write_spectrum_json(out, spectrum, metadata);
}

}  // namespace nft
