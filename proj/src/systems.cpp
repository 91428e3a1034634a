#include "systems.hpp"

#include <cmath>
#include <unordered_map>

namespace heatctl::systems {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void SpectralSystem::validate() const {
  for (std::size_t j = 0; j < rates.size(); ++j) {
    if (!std::isfinite(rates[j]) || rates[j] < 0.0)
      throw Error(ErrorCode::invalid_argument, "system: rates must be finite and nonnegative");
    if (j > 0 && rates[j] < rates[j - 1])
      throw Error(ErrorCode::invalid_argument, "system: rates must be ascending");
  }
  if (obs.rows() > 0 && obs.cols() != rates.size())
    throw Error(ErrorCode::invalid_argument, "system: observation width must match mode count");
  for (double v : obs.data())
    if (!std::isfinite(v))
      throw Error(ErrorCode::invalid_argument, "system: observation entries must be finite");
}

SpectralSystem dirichlet_interval_spectrum(double length, std::size_t modes) {
  if (length <= 0.0) throw Error(ErrorCode::invalid_argument, "interval: length must be positive");
  if (modes == 0) throw Error(ErrorCode::invalid_argument, "interval: need at least one mode");
  SpectralSystem s;
  s.rates.resize(modes);
  for (std::size_t k = 1; k <= modes; ++k) {
    const double w = double(k) * kPi / length;
    s.rates[k - 1] = w * w;
  }
  s.label = "dirichlet-interval";
  return s;
}

SpectralSystem boundary_observation(double length, std::size_t modes) {
  SpectralSystem s = dirichlet_interval_spectrum(length, modes);
  s.obs = numerics::Matrix(1, modes);
  const double amp = std::sqrt(2.0 / length);
  for (std::size_t k = 1; k <= modes; ++k) s.obs(0, k - 1) = double(k) * kPi / length * amp;
  s.label = "interval-boundary-obs";
  return s;
}

SpectralSystem interior_observation(double length, std::size_t modes,
                                    std::span<const Interval> omega,
                                    std::size_t nodes_per_interval) {
  SpectralSystem s = dirichlet_interval_spectrum(length, modes);
  if (omega.empty() || nodes_per_interval == 0)
    throw Error(ErrorCode::invalid_argument, "interior observation: empty control region");
  for (const Interval& iv : omega)
    if (!(0.0 <= iv.lo && iv.lo < iv.hi && iv.hi <= length))
      throw Error(ErrorCode::invalid_argument, "interior observation: subinterval outside ]0,L[");

  const std::size_t rows = omega.size() * nodes_per_interval;
  s.obs = numerics::Matrix(rows, modes);
  const double amp = std::sqrt(2.0 / length);
  std::size_t r = 0;
  for (const Interval& iv : omega) {
    const double w = (iv.hi - iv.lo) / double(nodes_per_interval);
    const double sw = std::sqrt(w);
    for (std::size_t i = 0; i < nodes_per_interval; ++i, ++r) {
      const double x = iv.lo + (double(i) + 0.5) * w;
      for (std::size_t k = 1; k <= modes; ++k)
        s.obs(r, k - 1) = sw * amp * std::sin(double(k) * kPi * x / length);
    }
  }
  s.label = "interval-interior-obs";
  return s;
}

GridSystem::GridSystem(const geometry::GridDomain& domain) : dim_(domain.dim), h_(domain.h) {
  domain.validate();
  std::unordered_map<std::size_t, std::size_t> compact;
  for (std::size_t idx = 0; idx < domain.cells(); ++idx) {
    if (!domain.mask[idx]) continue;
    compact.emplace(idx, cells_.size());
    cells_.push_back(idx);
  }
  if (cells_.empty())
    throw Error(ErrorCode::invalid_argument, "grid laplacian: degenerate mask");

  neighbors_.assign(cells_.size() * 2 * dim_, -1);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto coord = domain.unpack(cells_[c]);
    for (int a = 0; a < dim_; ++a) {
      for (int s = 0; s < 2; ++s) {
        const long t = long(coord[a]) + (s ? 1 : -1);
        if (t < 0 || t >= long(domain.dims[a])) continue;  // Dirichlet (outside lattice)
        auto cc = coord;
        cc[a] = std::size_t(t);
        const std::size_t nidx = domain.index(cc[0], cc[1], cc[2]);
        if (!domain.mask[nidx]) continue;  // Dirichlet (mask exterior eliminated)
        neighbors_[c * 2 * dim_ + 2 * a + s] = long(compact.at(nidx));
      }
    }
  }
}

void GridSystem::apply(const numerics::Vector& in, numerics::Vector& out) const {
  if (in.size() != cells_.size())
    throw Error(ErrorCode::invalid_argument, "grid apply: size mismatch");
  out.assign(cells_.size(), 0.0);
  const double inv_h2 = 1.0 / (h_ * h_);
  const int deg = 2 * dim_;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    double acc = double(deg) * in[c];
    for (int e = 0; e < deg; ++e) {
      const long nb = neighbors_[c * deg + e];
      if (nb >= 0) acc -= in[std::size_t(nb)];
    }
    out[c] = acc * inv_h2;
  }
}

numerics::SymMatrix GridSystem::dense(std::size_t size_limit) const {
  if (cells_.size() > size_limit)
    throw Error(ErrorCode::size_limit, "grid laplacian: dense matrix exceeds the size cap");
  const std::size_t n = cells_.size();
  numerics::SymMatrix m(n);
  const double inv_h2 = 1.0 / (h_ * h_);
  const int deg = 2 * dim_;
  for (std::size_t c = 0; c < n; ++c) {
    m.set(c, c, double(deg) * inv_h2);
    for (int e = 0; e < deg; ++e) {
      const long nb = neighbors_[c * deg + e];
      if (nb >= 0) m.set(c, std::size_t(nb), -inv_h2);
    }
  }
  return m;
}

double GridSystem::smallest_rate(double rel_tol, std::size_t max_iters) const {
  const std::size_t n = cells_.size();
  numerics::Vector x(n, 1.0), y(n), r(n), p(n), ap(n);

  // Inverse power iteration; each solve by conjugate gradients (the operator
  // is SPD after Dirichlet elimination).
  auto cg_solve = [&](const numerics::Vector& b, numerics::Vector& sol) {
    sol.assign(n, 0.0);
    r = b;
    p = r;
    double rs = numerics::dot(r, r);
    const double target = rs * 1e-24;
    for (std::size_t it = 0; it < 20 * n + 100; ++it) {
      apply(p, ap);
      const double alpha = rs / numerics::dot(p, ap);
      for (std::size_t i = 0; i < n; ++i) {
        sol[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      const double rs2 = numerics::dot(r, r);
      if (rs2 <= target) break;
      const double beta = rs2 / rs;
      rs = rs2;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
  };

  double rate = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    const double nx = numerics::norm(x);
    for (double& v : x) v /= nx;
    cg_solve(x, y);
    apply(y, ap);
    const double new_rate = numerics::dot(y, ap) / numerics::dot(y, y);
    const bool done = it > 0 && std::fabs(new_rate - rate) <= rel_tol * std::fabs(new_rate);
    rate = new_rate;
    x = y;
    if (done) return rate;
  }
  return rate;
}

GridSystem grid_laplacian(const geometry::GridDomain& domain) { return GridSystem(domain); }

}  // namespace heatctl::systems
