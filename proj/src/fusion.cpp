#include "rtc/fusion.hpp"

#include "rtc/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace rtc {

namespace {

int fold_finite(const RootDatum& datum, std::vector<int>& x, long& steps, long cap) {
  const int r = datum.rank();
  int sign = 1;
  while (true) {
    int i = 0;
    while (i < r && x[i] >= 0) ++i;
    if (i == r) break;
    const int c = x[i];
    for (int j = 0; j < r; ++j) x[j] -= c * datum.cartan[i][j];
    sign = -sign;
    if (++steps > cap) fail(ErrorKind::Internal, "Weyl folding exceeded its iteration cap");
  }
  for (int v : x)
    if (v == 0) return 0;
  return sign;
}

using WeightList = std::vector<std::pair<Weight, std::int64_t>>;

// Accumulates sign * mult over the folded images of lambda + xi + rho.
template <typename Fold, typename Emit>
void racah_speiser(const RootDatum& datum, const Weight& lambda, const WeightList& weights, Fold&& fold, Emit&& emit) {
  const int r = datum.rank();
  std::vector<int> x(r);
  for (const auto& [xi, mult] : weights) {
    for (int i = 0; i < r; ++i) x[i] = lambda[i] + xi[i] + 1;
    const int sign = fold(x);
    if (sign == 0) continue;
    for (int i = 0; i < r; ++i) x[i] -= 1;
    emit(x, sign * mult);
  }
}

// Orders a pair so the second factor has the smaller weight system.
std::pair<const Weight*, const Weight*> order_by_dimension(const RootDatum& datum, const Weight& a, const Weight& b) {
  return weyl_dimension(datum, a) >= weyl_dimension(datum, b) ? std::pair{&a, &b} : std::pair{&b, &a};
}

std::vector<Channel> fuse_indices(const RootDatum& datum, const AffineFolder& folder, const SimpleObjectSet& objects,
                                  WeightSystemCache& cache, const Weight& big, const Weight& small) {
  const auto weights = cache.get(small);
  std::vector<std::int64_t> acc(objects.size(), 0);
  racah_speiser(
      datum, big, *weights, [&](std::vector<int>& x) { return folder.fold(x); },
      [&](const std::vector<int>& x, std::int64_t v) {
        const auto it = objects.index.find(Weight(x));
        if (it == objects.index.end())
          fail(ErrorKind::Internal, "affine folding left the alcove at " + Weight(x).to_string());
        acc[it->second] += v;
      });
  std::vector<Channel> out;
  for (int k = 0; k < objects.size(); ++k) {
    if (acc[k] < 0)
      fail(ErrorKind::Internal, "negative fusion coefficient for " + big.to_string() + " x " + small.to_string());
    if (acc[k] > 0) out.push_back({k, static_cast<int>(acc[k])});
  }
  return out;
}

}  // namespace

int FusionTable::coeff(int i, int j, int k) const {
  const auto& chans = product(i, j);
  const auto it = std::lower_bound(chans.begin(), chans.end(), k,
                                   [](const Channel& c, int v) { return c.object < v; });
  return (it != chans.end() && it->object == k) ? it->multiplicity : 0;
}

AffineFolder::AffineFolder(const RootDatum& datum, int ell)
    : datum_(datum), ell_(ell), wall_(affine_wall(datum, ell)), cap_(16L * datum.rank() * ell) {}

int AffineFolder::fold(std::vector<int>& x) const {
  const int r = datum_.rank();
  long steps = 0;
  int sign = 1;
  while (true) {
    const int s = fold_finite(datum_, x, steps, cap_);
    if (s == 0) return 0;
    sign *= s;
    std::int64_t level = -ell_;
    for (int i = 0; i < r; ++i) level += x[i] * wall_.pairing[i];
    if (level == 0) return 0;
    if (level < 0) return sign;
    if (level % wall_.reflectionDivisor != 0) fail(ErrorKind::Internal, "non-integral affine reflection");
    const std::int64_t c = level / wall_.reflectionDivisor;
    for (int i = 0; i < r; ++i) x[i] -= static_cast<int>(c * wall_.theta[i]);
    sign = -sign;
    if (++steps > cap_) fail(ErrorKind::Internal, "affine folding exceeded its iteration cap");
  }
}

std::map<Weight, std::int64_t> classical_tensor(const RootDatum& datum, const Weight& lambda, const Weight& mu) {
  for (const Weight* w : {&lambda, &mu}) {
    if (w->rank() != datum.rank()) fail(ErrorKind::Parameter, "weight length does not match the rank");
    if (!w->is_dominant()) fail(ErrorKind::Parameter, "weight " + w->to_string() + " is not dominant");
  }
  const auto [big, small] = order_by_dimension(datum, lambda, mu);
  const auto system = weight_multiplicities(datum, *small);
  const WeightList weights(system.begin(), system.end());
  std::map<Weight, std::int64_t> acc;
  const long cap = 1L << 40;
  racah_speiser(
      datum, *big, weights,
      [&](std::vector<int>& x) {
        long steps = 0;
        return fold_finite(datum, x, steps, cap);
      },
      [&](const std::vector<int>& x, std::int64_t v) { acc[Weight(x)] += v; });
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  for (const auto& [w, n] : acc)
    if (n < 0) fail(ErrorKind::Internal, "negative tensor multiplicity at " + w.to_string());
  return acc;
}

std::map<Weight, std::int64_t> fuse(const RootDatum& datum, int ell, const Weight& lambda, const Weight& mu) {
  const SimpleObjectSet objects = simple_objects(datum, ell);
  for (const Weight* w : {&lambda, &mu}) {
    if (w->rank() != datum.rank()) fail(ErrorKind::Parameter, "weight length does not match the rank");
    if (!objects.contains(*w))
      fail(ErrorKind::Parameter, "weight " + w->to_string() + " is not a simple object at ell=" + std::to_string(ell));
  }
  const AffineFolder folder(datum, ell);
  WeightSystemCache cache(datum);
  const auto [big, small] = order_by_dimension(datum, lambda, mu);
  std::map<Weight, std::int64_t> out;
  for (const auto& c : fuse_indices(datum, folder, objects, cache, *big, *small))
    out.emplace(objects.objects[c.object], c.multiplicity);
  return out;
}

FusionTable fusion_table(const RootDatum& datum, int ell, const PrecisionCtx& ctx, int jobs) {
  FusionTable table;
  table.algebra = datum.algebra;
  table.ell = ell;
  table.objects = simple_objects(datum, ell);
  const int n = table.size();
  table.products.assign(static_cast<std::size_t>(n) * n, {});

  std::vector<std::int64_t> dims(n);
  for (int i = 0; i < n; ++i) dims[i] = weyl_dimension(datum, table.objects.objects[i]);

  const AffineFolder folder(datum, ell);
  WeightSystemCache cache(datum);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t at = next++; at < pairs.size(); at = next++) {
      const auto [i, j] = pairs[at];
      const bool iBig = dims[i] >= dims[j];
      const Weight& big = table.objects.objects[iBig ? i : j];
      const Weight& small = table.objects.objects[iBig ? j : i];
      table.products[static_cast<std::size_t>(i) * n + j] = fuse_indices(datum, folder, table.objects, cache, big, small);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(pairs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          worker();
        } catch (...) {
          errors[t] = std::current_exception();
          next = pairs.size();
        }
      });
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      table.products[static_cast<std::size_t>(i) * n + j] = table.products[static_cast<std::size_t>(j) * n + i];

  finish_fusion_table(table, ctx);
  for (int i = 0; i < n; ++i) {
    const Weight expected = dual_weight(datum, table.objects.objects[i]);
    if (table.objects.objects[table.dualIndex[i]] != expected)
      fail(ErrorKind::Internal, "fusion dual of " + table.objects.objects[i].to_string() +
                                    " disagrees with the diagram automorphism");
  }
  return table;
}

void finish_fusion_table(FusionTable& table, const PrecisionCtx& ctx) {
  const int n = table.size();
  table.dualIndex.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int c = table.coeff(i, j, 0);
      if (c == 0) continue;
      if (c != 1 || table.dualIndex[i] != -1)
        fail(ErrorKind::Internal, "unit channel is not a perfect matching in the fusion table");
      table.dualIndex[i] = j;
    }
    if (table.dualIndex[i] == -1) fail(ErrorKind::Internal, "object without a dual in the fusion table");
  }
  FrobeniusPerron fp = frobenius_perron(table, ctx);
  table.fpDims = std::move(fp.dims);
  table.fpGlobal = std::move(fp.global);
}

FrobeniusPerron frobenius_perron(const FusionTable& table, const PrecisionCtx& ctx) {
  const int n = table.size();
  // M = sum_lambda N_lambda is symmetric with a simple dominant eigenvalue.
  std::vector<std::vector<std::int64_t>> dense(n, std::vector<std::int64_t>(n, 0));
  for (int l = 0; l < n; ++l)
    for (int mu = 0; mu < n; ++mu)
      for (const auto& c : table.product(l, mu)) dense[mu][c.object] += c.multiplicity;
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dense[i][j] != 0) rows[i].emplace_back(j, dense[i][j]);

  constexpr long kMaxSteps = 1000000;
  FrobeniusPerron out;

  // Machine-precision warm start.
  std::vector<double> vd(n, 1.0), wd(n);
  for (long step = 0; step < kMaxSteps; ++step) {
    double norm = 0;
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (const auto& [j, m] : rows[i]) s += static_cast<double>(m) * vd[j];
      wd[i] = s;
      norm = std::max(norm, s);
    }
    double change = 0;
    for (int i = 0; i < n; ++i) {
      wd[i] /= norm;
      change = std::max(change, std::abs(wd[i] - vd[i]));
    }
    vd.swap(wd);
    ++out.iterations;
    if (change < 1e-15) break;
  }

  ScopedPrecision scope(ctx);
  const Real target = PrecisionCtx::power_of_ten(std::max(ctx.digits - 6, 10));
  std::vector<Real> v(vd.begin(), vd.end()), w(n);
  Real rayleigh = 0;
  bool converged = false;
  for (long step = out.iterations; step < kMaxSteps; ++step) {
    Real vv = 0, vw = 0, vmax = 0;
    for (int i = 0; i < n; ++i) {
      Real s = 0;
      for (const auto& [j, m] : rows[i]) s += Real(m) * v[j];
      w[i] = std::move(s);
      vv += v[i] * v[i];
      vw += v[i] * w[i];
      if (v[i] > vmax) vmax = v[i];
    }
    rayleigh = vw / vv;
    Real residual = 0;
    for (int i = 0; i < n; ++i) residual = std::max(residual, abs(w[i] - rayleigh * v[i]));
    residual /= rayleigh * vmax;
    ++out.iterations;
    if (residual < target) {
      converged = true;
      break;
    }
    Real wmax = 0;
    for (const auto& x : w)
      if (x > wmax) wmax = x;
    for (int i = 0; i < n; ++i) v[i] = w[i] / wmax;
  }
  if (!converged)
    fail(ErrorKind::NumericalInstability, "Frobenius-Perron power iteration did not converge for " +
                                              table.algebra.name() + " ell=" + std::to_string(table.ell));

  out.eigenvalue = rayleigh;
  out.global = 0;
  out.dims.resize(n);
  for (int l = 0; l < n; ++l) {
    out.dims[l] = v[l] / v[0];
    out.global += out.dims[l] * out.dims[l];
  }
  out.eigenSpread = 0;
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      Real s = 0;
      for (const auto& c : table.product(l, i)) s += Real(c.multiplicity) * v[c.object];
      const Real dev = abs(s / v[i] - out.dims[l]) / out.dims[l];
      if (dev > out.eigenSpread) out.eigenSpread = dev;
    }
  }
  return out;
}

}  // namespace rtc
