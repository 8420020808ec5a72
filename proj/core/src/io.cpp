#include "specdens/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "specdens/error.hpp"

namespace specdens {

using nlohmann::json;

std::string_view version() { return SPECDENS_VERSION; }

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw IoError("cannot format number");
  return std::string(buf, ptr);
}

namespace {

double parse_number(std::string_view s, std::string_view token) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError("malformed complex entry '" + std::string(token) + "'");
  return v;
}

void write_header(std::ostream& out, std::string_view header) {
  if (header.empty()) return;
  std::istringstream lines{std::string(header)};
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

json doubles(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw ValidationError("empty complex entry");
  if (token.back() != 'j' && token.back() != 'i') return {parse_number(token, token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  // The imaginary part starts at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const std::string_view imag = body.empty() || body == "+" || body == "-" ? std::string_view{} : body;
    if (imag.empty()) return {0.0, body == "-" ? -1.0 : 1.0};
    return {0.0, parse_number(imag, token)};
  }
  const std::string_view re = body.substr(0, split);
  std::string_view im = body.substr(split);
  const double imag = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : parse_number(im, token);
  return {parse_number(re, token), imag};
}

std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  const std::string im = format_double(z.imag());
  if (im.front() != '-') s += '+';
  return s + im + 'j';
}

OperatorFile read_operator(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError("operator file is empty");
  const auto head = tokens(line);
  if (head.size() != 2 || head[0] != "dim") throw ValidationError("operator file must start with 'dim n'");
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(head[1].data(), head[1].data() + head[1].size(), n);
  if (ec != std::errc{} || ptr != head[1].data() + head[1].size() || n == 0)
    throw ValidationError("invalid dimension '" + head[1] + "'");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_content_line(in, line)) throw ValidationError("operator file ends before row " + std::to_string(i));
    const auto row = tokens(line);
    if (row.size() != n) throw ValidationError("row " + std::to_string(i) + " has the wrong number of entries");
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(row[j]);
  }
  OperatorFile file{HermitianOperator(std::move(m)), std::nullopt};
  if (next_content_line(in, line)) {
    const auto row = tokens(line);
    if (row.size() != n) throw ValidationError("probe row has the wrong number of entries");
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v(static_cast<Eigen::Index>(j)) = parse_complex(row[j]);
    file.psi = ProbeState(std::move(v));
  }
  return file;
}

OperatorFile read_operator_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_operator(in);
}

void write_operator(std::ostream& out, const HermitianOperator& op, const ProbeState* psi) {
  const auto n = static_cast<Eigen::Index>(op.dim());
  out << "dim " << n << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out << (j ? " " : "") << format_complex(op.matrix()(i, j));
    out << '\n';
  }
  if (psi) {
    for (Eigen::Index j = 0; j < n; ++j) out << (j ? " " : "") << format_complex(psi->amplitudes()(j));
    out << '\n';
  }
}

std::string to_json(const SpectralModel& model) {
  return json{{"eigenvalues", doubles(model.eigenvalues())}, {"weights", doubles(model.weights())}}.dump();
}

SpectralModel model_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    return SpectralModel(j.at("eigenvalues").get<std::vector<double>>(), j.at("weights").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model record: ") + e.what());
  }
}

std::string to_json(const KernelSpec& kernel) {
  json params;
  switch (family(kernel)) {
    case KernelFamily::Fejer: params = {{"N", std::get<FejerKernel>(kernel).order}}; break;
    case KernelFamily::QubitizedFejer: params = {{"N", std::get<QubitizedFejerKernel>(kernel).order}}; break;
    case KernelFamily::Gaussian: params = {{"width", std::get<GaussianKernel>(kernel).width}}; break;
    case KernelFamily::Jackson: {
      const auto& j = std::get<JacksonKernel>(kernel);
      params = {{"k", j.k()}, {"N", j.order()}, {"delta", j.delta()}, {"normalization", j.normalization()}};
      break;
    }
  }
  return json{{"family", family_name(family(kernel))}, {"params", params}}.dump();
}

KernelSpec kernel_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const std::string fam = j.at("family").get<std::string>();
    const json& p = j.at("params");
    KernelSpec spec;
    if (fam == "fejer") {
      spec = FejerKernel{p.at("N").get<std::uint64_t>()};
    } else if (fam == "qfejer") {
      spec = QubitizedFejerKernel{p.at("N").get<std::uint64_t>()};
    } else if (fam == "gaussian") {
      spec = GaussianKernel{p.at("width").get<double>()};
    } else if (fam == "jackson") {
      spec = JacksonKernel(p.at("k").get<std::uint64_t>(), p.at("N").get<std::uint64_t>(), p.at("delta").get<double>());
    } else {
      throw ValidationError("unknown kernel family '" + fam + "'");
    }
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed kernel record: ") + e.what());
  }
}

std::string to_json(const AccuracyTarget& t) {
  return json{{"sigma", t.sigma}, {"delta", t.delta}, {"beta", t.beta}, {"eta", t.eta}}.dump();
}

std::string to_json(const Budget& b) {
  json j{{"method", method_name(b.method)}, {"kernel_order", b.kernel_order}, {"N_S", b.total_samples}};
  j["width"] = b.width ? json(*b.width) : json(nullptr);
  j["per_order_shots"] = b.per_order_shots ? json(*b.per_order_shots) : json(nullptr);
  j["delta_t"] = b.evolution_tolerance ? json(*b.evolution_tolerance) : json(nullptr);
  return j.dump();
}

std::string to_json(const TruncationBudget& b) {
  return json{{"L", b.order},
              {"closed_form_L", b.closed_form_order},
              {"adjusted", b.adjusted},
              {"regime", regime_name(b.regime)},
              {"width", b.width},
              {"R_L_bound", b.error_bound},
              {"beta_L", b.beta_lower},
              {"beta_U", b.beta_upper},
              {"epsilon_R_min", b.min_error}}
      .dump();
}

std::string to_json(const ChebExpansion& e) {
  return json{{"width", e.width},
              {"L", e.order},
              {"sigma", e.sigma},
              {"mode", e.mode == RescaleMode::Half ? "half" : "full"},
              {"a", e.a},
              {"c", e.c},
              {"coeff_bound", e.coeff_bound},
              {"bound_ok", e.bound_ok}}
      .dump();
}

std::string to_json(const AccuracyReport& r) {
  return json{{"measured_sigma", r.measured_sigma},
              {"delta_V", r.delta_v},
              {"empirical_confidence", r.empirical_confidence},
              {"grid_spacing", r.grid_spacing},
              {"trials", r.trials},
              {"pass", {{"sigma", r.sigma_pass}, {"beta", r.beta_pass}, {"all", r.pass()}}}}
      .dump();
}

std::string to_json(const ObservableCheck& c) {
  return json{{"trials", c.trials},
              {"violations", c.violations},
              {"violation_rate", c.violation_rate},
              {"max_error", c.max_error},
              {"bound", c.bound},
              {"pass", c.pass}}
      .dump();
}

void write_transform_csv(std::ostream& out, const TransformGrid& grid, std::string_view header) {
  write_header(out, header);
  out << "nu,value\n";
  for (std::size_t i = 0; i < grid.nu.size(); ++i)
    out << format_double(grid.nu[i]) << ',' << format_double(grid.values[i]) << '\n';
}

void write_histogram_csv(std::ostream& out, std::span<const double> grid, std::span<const std::uint64_t> counts,
                         std::string_view header) {
  if (grid.size() != counts.size()) throw ValidationError("histogram grid and counts differ in length");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  write_header(out, header);
  out << "sigma_q,count,frequency\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << format_double(grid[i]) << ',' << counts[i] << ','
        << format_double(total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0) << '\n';
}

void write_moments_csv(std::ostream& out, std::span<const double> moments, std::string_view header) {
  write_header(out, header);
  out << "k,t_k\n";
  for (std::size_t k = 0; k < moments.size(); ++k) out << k << ',' << format_double(moments[k]) << '\n';
}

void write_capture_csv(std::ostream& out, const SigmaAccuracy& acc, std::string_view header) {
  write_header(out, header);
  out << "omega0,captured\n";
  for (std::size_t i = 0; i < acc.omegas.size(); ++i)
    out << format_double(acc.omegas[i]) << ',' << format_double(acc.captured[i]) << '\n';
}

void write_scaling_csv(std::ostream& out, std::span<const std::pair<double, double>> points, const ScalingFit& fit,
                       std::string_view header) {
  if (fit.residuals.size() != points.size()) throw ValidationError("fit does not match the sweep");
  write_header(out, header);
  out << "x,M,residual\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    out << format_double(points[i].first) << ',' << format_double(points[i].second) << ','
        << format_double(fit.residuals[i]) << '\n';
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace specdens
