#include "kfuse/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kfuse/rng.hpp"

namespace kfuse {

const std::vector<std::string>& model_ids() {
  static const std::vector<std::string> ids = {"1a", "1b", "1c", "2a", "2b", "2c",
                                               "3",  "4",  "5",  "6",  "7"};
  return ids;
}

std::size_t model_min_p(const std::string& id) {
  if (id == "1a" || id == "1b" || id == "1c") return 2;
  if (id == "2a" || id == "2b" || id == "2c") return 10;
  if (id == "3") return 2;
  if (id == "4") return 3;
  if (id == "5") return 22;
  if (id == "6") return 2;
  if (id == "7") return 10;
  throw std::invalid_argument("unknown model id: " + id);
}

void ModelSpec::validate() const {
  const std::size_t min_p = model_min_p(id);
  if (n < 8) throw std::invalid_argument("model needs n >= 8");
  if (p < min_p) {
    throw std::invalid_argument("model " + id + " needs p >= " + std::to_string(min_p));
  }
}

namespace {

// CS(rho): W_j = sqrt(rho) Z0 + sqrt(1-rho) Z_j; one shared Z0 per row.
Matrix gaussian_cs(Rng& rng, std::size_t n, std::size_t p, double rho) {
  Matrix w(n, p);
  std::vector<double> z0(n);
  for (auto& z : z0) z = rng.normal();
  const double a = std::sqrt(rho);
  const double b = std::sqrt(1.0 - rho);
  for (std::size_t j = 0; j < p; ++j) {
    auto col = w.col(j);
    for (std::size_t i = 0; i < n; ++i) col[i] = a * z0[i] + b * rng.normal();
  }
  return w;
}

// AR(rho): W_1 = Z_1, W_j = rho W_{j-1} + sqrt(1-rho^2) Z_j.
Matrix gaussian_ar(Rng& rng, std::size_t n, std::size_t p, double rho) {
  Matrix w(n, p);
  const double c = std::sqrt(1.0 - rho * rho);
  {
    auto col = w.col(0);
    for (std::size_t i = 0; i < n; ++i) col[i] = rng.normal();
  }
  for (std::size_t j = 1; j < p; ++j) {
    auto prev = w.col(j - 1);
    auto col = w.col(j);
    for (std::size_t i = 0; i < n; ++i) col[i] = rho * prev[i] + c * rng.normal();
  }
  return w;
}

void fill_iid(Matrix& x, Rng& rng, double (Rng::*draw)()) {
  for (std::size_t j = 0; j < x.cols; ++j) {
    auto col = x.col(j);
    for (std::size_t i = 0; i < x.rows; ++i) col[i] = (rng.*draw)();
  }
}

std::vector<std::size_t> iota_truth(std::size_t d) {
  std::vector<std::size_t> t(d);
  std::iota(t.begin(), t.end(), std::size_t{1});
  return t;
}

Dataset make_continuous(Matrix x, std::vector<double> y,
                        std::vector<std::size_t> truth, const std::string& id) {
  Dataset ds;
  ds.x = std::move(x);
  ds.resp.kind = ResponseKind::continuous;
  ds.resp.values = std::move(y);
  ds.truth = std::move(truth);
  ds.label = "model " + id;
  return ds;
}

}  // namespace

Dataset generate(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t p = spec.p;
  Rng rng(spec.seed);
  const std::string& id = spec.id;

  if (id[0] == '1') {
    // T_y(Y) = T(X)^T beta + eps, beta = 2.8 (1, -1, 0...), CS(0.7)
    Matrix w = gaussian_cs(rng, n, p, 0.7);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 2.8 * (w(i, 0) - w(i, 1)) + rng.normal();
    }
    if (id == "1c") {
      for (auto& v : y) v = std::pow(v, 9.0);
    }
    if (id == "1b") {
      for (auto& v : w.data) v = std::pow(v, 9.0);
    }
    return make_continuous(std::move(w), std::move(y), {1, 2}, id);
  }

  if (id[0] == '2') {
    // Y = T(X)^T beta + eps, beta = 0.8 1_10, AR(0.7)
    Matrix w = gaussian_ar(rng, n, p, 0.7);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 10; ++j) s += w(i, j);
      y[i] = 0.8 * s + rng.normal();
    }
    if (id == "2c") {
      for (auto& v : y) v = std::exp(v);
    }
    if (id == "2b") {
      for (auto& v : w.data) v = std::exp(2.0 * v);
    }
    return make_continuous(std::move(w), std::move(y), iota_truth(10), id);
  }

  if (id == "3") {
    Matrix x(n, p);
    fill_iid(x, rng, &Rng::cauchy);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = x(i, 0) + x(i, 1) + 1.0;
      y[i] = s * s * s + rng.normal();
    }
    return make_continuous(std::move(x), std::move(y), {1, 2}, id);
  }

  if (id == "4") {
    Matrix x(n, p);
    fill_iid(x, rng, &Rng::u01);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 4.0 * x(i, 0) + 2.0 * std::tan(M_PI * x(i, 1) / 2.0) +
             5.0 * x(i, 2) * x(i, 2) + rng.normal();
    }
    return make_continuous(std::move(x), std::move(y), {1, 2, 3}, id);
  }

  if (id == "5") {
    Matrix x = gaussian_ar(rng, n, p, 0.8);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double mean = 2.0 * (x(i, 0) + 0.8 * x(i, 1) + 0.6 * x(i, 2) +
                                 0.4 * x(i, 3) + 0.2 * x(i, 4));
      const double scale = std::exp(x(i, 19) + x(i, 20) + x(i, 21));
      y[i] = mean + scale * rng.normal();
    }
    return make_continuous(std::move(x), std::move(y),
                           {1, 2, 3, 4, 5, 20, 21, 22}, id);
  }

  if (id == "6") {
    // Poisson regression with t_2 covariates; means capped at exp(50)
    Matrix x(n, p);
    fill_iid(x, rng, &Rng::t2);
    Dataset ds;
    ds.resp.kind = ResponseKind::count;
    ds.resp.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = std::min(0.8 * x(i, 0) - 0.8 * x(i, 1), 50.0);
      ds.resp.values[i] = rng.poisson(std::exp(eta));
    }
    ds.x = std::move(x);
    ds.truth = {1, 2};
    ds.label = "model 6";
    return ds;
  }

  if (id == "7") {
    // Balanced multiclass: class g activates columns 2(g-1)+1 and 2g with the
    // +-3 normal mixture; everything else is standard Cauchy.
    std::vector<double> y(n);
    const std::size_t base = n / 5;
    const std::size_t rem = n % 5;
    std::size_t pos = 0;
    for (std::size_t g = 1; g <= 5; ++g) {
      const std::size_t cnt = base + (g <= rem ? 1 : 0);
      for (std::size_t k = 0; k < cnt; ++k) y[pos++] = static_cast<double>(g);
    }
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = rng.uniform_below(i + 1);
      std::swap(y[i], y[j]);
    }
    Matrix x(n, p);
    fill_iid(x, rng, &Rng::cauchy);
    for (std::size_t g = 1; g <= 5; ++g) {
      for (std::size_t col : {2 * (g - 1), 2 * g - 1}) {
        for (std::size_t i = 0; i < n; ++i) {
          if (y[i] == static_cast<double>(g)) x(i, col) = rng.mixture_pm3();
        }
      }
    }
    Dataset ds;
    ds.x = std::move(x);
    ds.resp.kind = ResponseKind::categorical;
    ds.resp.levels = 5;
    ds.resp.values = std::move(y);
    ds.truth = iota_truth(10);
    ds.label = "model 7";
    return ds;
  }

  throw std::invalid_argument("unknown model id: " + id);
}

std::vector<double> rng_draws(DrawKind kind, std::uint64_t seed, std::size_t n,
                              double mu) {
  if (n < 1) throw std::invalid_argument("need n >= 1 draws");
  Rng rng(seed);
  std::vector<double> out(n);
  switch (kind) {
    case DrawKind::normal:
      for (auto& v : out) v = rng.normal();
      break;
    case DrawKind::cauchy:
      for (auto& v : out) v = rng.cauchy();
      break;
    case DrawKind::t2:
      for (auto& v : out) v = rng.t2();
      break;
    case DrawKind::uniform:
      for (auto& v : out) v = rng.u01();
      break;
    case DrawKind::poisson:
      for (auto& v : out) v = rng.poisson(mu);
      break;
    case DrawKind::mixture:
      for (auto& v : out) v = rng.mixture_pm3();
      break;
  }
  return out;
}

}  // namespace kfuse
