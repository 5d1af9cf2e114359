#include "scarfcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "scarfcs/error.hpp"

namespace scarfcs {

void GridSpec::validate() const {
  if (x_points < 2 || t_points < 2) throw DomainError("grid needs at least 2 x and 2 t points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive");
  if (!(margin > 0.0) || !(margin < 0.5)) throw DomainError("margin must lie in (0, 0.5)");
}

double GridSpec::dx() const { return (std::numbers::pi - 2.0 * margin) / (x_points - 1); }

double GridSpec::x(int j) const { return -std::numbers::pi / 2.0 + margin + j * dx(); }

double GridSpec::t(int i) const { return t_max * i / (t_points - 1); }

double CarpetField::max_slice_norm_error() const {
  double e = 0.0;
  for (double s : slice_norms) e = std::max(e, std::fabs(s - 1.0));
  return e;
}

Evolver::Evolver(ModelKind model, const CoherentExpansion& state)
    : system_(model, state.params, static_cast<int>(state.coefficients.size()) - 1),
      coefficients_(state.coefficients) {
  energies_.reserve(coefficients_.size());
  for (std::size_t n = 0; n < coefficients_.size(); ++n) {
    energies_.push_back(state.energy(static_cast<int>(n)));
  }
}

std::complex<double> Evolver::combine(std::span<const double> psi, double t) const {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t n = 0; n < coefficients_.size(); ++n) {
    sum += coefficients_[n] * std::polar(psi[n], -energies_[n] * t);
  }
  return sum;
}

std::complex<double> Evolver::operator()(double x, double t) const {
  std::vector<double> psi(coefficients_.size());
  system_.wavefunctions(x, psi);
  return combine(psi, t);
}

std::complex<double> evolve(ModelKind model, const CoherentExpansion& state, double x,
                            double t) {
  return Evolver(model, state)(x, t);
}

namespace {

// Row-major table psi_n(x_k): row k holds all levels at one abscissa.
std::vector<double> tabulate(const Evolver& ev, const std::vector<double>& xs) {
  const std::size_t levels = ev.levels();
  std::vector<double> table(xs.size() * levels);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    ev.eigensystem().wavefunctions(xs[k], std::span<double>(table.data() + k * levels, levels));
  }
  return table;
}

template <typename RowFn>
void for_each_row(int rows, unsigned threads, RowFn&& fn) {
  const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(rows));
  if (workers == 1) {
    for (int i = 0; i < rows; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < rows; i += static_cast<int>(workers)) fn(i);
    });
  }
}

}  // namespace

CarpetField carpet(ModelKind model, const CoherentExpansion& state, const GridSpec& grid,
                   const CarpetOptions& options) {
  grid.validate();
  const Evolver ev(model, state);
  const QuadratureRule& rule = options.norm_rule ? *options.norm_rule : default_rule();
  const std::size_t levels = ev.levels();

  std::vector<double> xs(static_cast<std::size_t>(grid.x_points));
  for (int j = 0; j < grid.x_points; ++j) xs[j] = grid.x(j);
  const std::vector<double> display = tabulate(ev, xs);
  const std::vector<double> nodes = tabulate(ev, rule.nodes());

  CarpetField field;
  field.grid = grid;
  field.density.assign(static_cast<std::size_t>(grid.x_points) * grid.t_points, 0.0);
  field.slice_norms.assign(static_cast<std::size_t>(grid.t_points), 0.0);
  field.grid_mass.assign(static_cast<std::size_t>(grid.t_points), 0.0);
  const double h = grid.dx();

  for_each_row(grid.t_points, options.threads, [&](int i) {
    const double t = grid.t(i);
    double* row = field.density.data() + static_cast<std::size_t>(i) * grid.x_points;
    double mass = 0.0;
    for (int j = 0; j < grid.x_points; ++j) {
      const auto psi = std::span<const double>(display.data() + j * levels, levels);
      row[j] = std::norm(ev.combine(psi, t));
      mass += (j == 0 || j + 1 == grid.x_points ? 0.5 : 1.0) * row[j];
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto psi = std::span<const double>(nodes.data() + k * levels, levels);
      norm += rule.weights()[k] * std::norm(ev.combine(psi, t));
    }
    field.grid_mass[static_cast<std::size_t>(i)] = mass * h;
    field.slice_norms[static_cast<std::size_t>(i)] = norm;
  });

  for (int i = 0; i < grid.t_points; ++i) {
    const double s = field.slice_norms[static_cast<std::size_t>(i)];
    if (!(std::fabs(s - 1.0) <= kSliceNormHardTolerance)) {
      std::ostringstream msg;
      msg << "carpet: slice norm " << s << " at t = " << grid.t(i)
          << " is outside 1 +/- " << kSliceNormHardTolerance
          << " (truncation or normalization failure)";
      throw ValidationError(msg.str());
    }
  }
  return field;
}

CarpetField carpet(ModelKind model, const GcsSpec& spec, const PotentialParams& params,
                   const Zeta& zeta, const GridSpec& grid, const TruncationPolicy& policy,
                   const CarpetOptions& options) {
  return carpet(model, expansion(spec, params, zeta, policy), grid, options);
}

std::vector<std::uint16_t> pgm_samples(const std::vector<double>& density) {
  const double peak = density.empty() ? 0.0 : *std::max_element(density.begin(), density.end());
  std::vector<std::uint16_t> out(density.size(), 0);
  if (!(peak > 0.0)) return out;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double v = std::floor(density[i] / peak * 65535.0 + 0.5);
    out[i] = static_cast<std::uint16_t>(std::clamp(v, 0.0, 65535.0));
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const CarpetField& field) {
  const GridSpec& g = field.grid;
  os << 't';
  for (int j = 0; j < g.x_points; ++j) os << ',' << format_double(g.x(j));
  os << '\n';
  for (int i = 0; i < g.t_points; ++i) {
    os << format_double(g.t(i));
    for (int j = 0; j < g.x_points; ++j) os << ',' << format_double(field.at(i, j));
    os << '\n';
  }
}

void write_pgm(std::ostream& os, const CarpetField& field, std::string_view description) {
  os << "P5\n";
  std::string comment(description);
  std::replace(comment.begin(), comment.end(), '\n', ' ');
  os << "# " << (comment.empty() ? "scarfcs carpet" : comment) << '\n';
  os << field.grid.x_points << ' ' << field.grid.t_points << "\n65535\n";
  for (std::uint16_t s : pgm_samples(field.density)) {
    const char bytes[2] = {static_cast<char>(s >> 8), static_cast<char>(s & 0xff)};
    os.write(bytes, 2);
  }
}

}  // namespace

void export_carpet(const CarpetField& field, CarpetFormat format,
                   const std::filesystem::path& destination, std::string_view description) {
  namespace fs = std::filesystem;
  if (destination.empty()) throw IoError("export_carpet: destination path is empty");
  if (field.density.size() !=
      static_cast<std::size_t>(field.grid.x_points) * field.grid.t_points) {
    throw DomainError("export_carpet: density size does not match grid");
  }
  fs::path tmp = destination;
  tmp += ".partial";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("export_carpet: cannot open '" + destination.string() + "' for writing");
    if (format == CarpetFormat::Csv) {
      write_csv(os, field);
    } else {
      write_pgm(os, field, description);
    }
    os.flush();
    if (!os) {
      os.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("export_carpet: write failed for '" + destination.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, destination, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("export_carpet: cannot move output into '" + destination.string() +
                  "': " + ec.message());
  }
}

namespace {

double parse_double(const std::string& cell) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str()) throw IoError("read_carpet_csv: malformed number '" + cell + "'");
  return v;
}

}  // namespace

CarpetTable read_carpet_csv(const std::filesystem::path& source) {
  std::ifstream is(source);
  if (!is) throw IoError("read_carpet_csv: cannot open '" + source.string() + "'");
  CarpetTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(is, line)) throw IoError("read_carpet_csv: empty file");
  auto header = split(line);
  if (header.empty() || header[0] != "t") throw IoError("read_carpet_csv: missing 't' header");
  for (std::size_t j = 1; j < header.size(); ++j) table.x.push_back(parse_double(header[j]));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != header.size()) throw IoError("read_carpet_csv: ragged row");
    table.t.push_back(parse_double(cells[0]));
    for (std::size_t j = 1; j < cells.size(); ++j) table.density.push_back(parse_double(cells[j]));
  }
  return table;
}

}  // namespace scarfcs
