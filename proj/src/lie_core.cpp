#include "rtc/lie_core.hpp"

#include "rtc/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace rtc {

namespace {

IntMatrix chain_cartan(int rank) {
  IntMatrix a(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) {
    a[i][i] = 2;
    if (i + 1 < rank) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

IntMatrix cartan_matrix(AlgebraId id) {
  const int r = id.rank;
  switch (id.family) {
    case Family::A:
      return chain_cartan(r);
    case Family::B: {
      IntMatrix a = chain_cartan(r);
      a[r - 2][r - 1] = -2;
      return a;
    }
    case Family::C: {
      IntMatrix a = chain_cartan(r);
      a[r - 1][r - 2] = -2;
      return a;
    }
    case Family::D: {
      IntMatrix a = chain_cartan(r);
      a[r - 2][r - 1] = a[r - 1][r - 2] = 0;
      a[r - 3][r - 1] = a[r - 1][r - 3] = -1;
      return a;
    }
    case Family::E: {
      // Chain 1-2-...-(r-1); the last node hangs off node 3 (E6, E7) or node 5 (E8).
      IntMatrix a = chain_cartan(r);
      a[r - 2][r - 1] = a[r - 1][r - 2] = 0;
      const int branch = (r == 8) ? 4 : 2;
      a[branch][r - 1] = a[r - 1][branch] = -1;
      return a;
    }
    case Family::F:
      return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    case Family::G:
      return {{2, -3}, {-1, 2}};
  }
  fail(ErrorKind::Internal, "unknown family");
}

int length_ratio(Family f) {
  switch (f) {
    case Family::B:
    case Family::C:
    case Family::F:
      return 2;
    case Family::G:
      return 3;
    default:
      return 1;
  }
}

std::vector<bool> short_simple_roots(AlgebraId id) {
  std::vector<bool> s(id.rank, false);
  switch (id.family) {
    case Family::B:
      s[id.rank - 1] = true;
      break;
    case Family::C:
      for (int i = 0; i + 1 < id.rank; ++i) s[i] = true;
      break;
    case Family::F:
      s[2] = s[3] = true;
      break;
    case Family::G:
      s[1] = true;
      break;
    default:
      break;
  }
  return s;
}

RationalMatrix invert(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  RationalMatrix m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) fail(ErrorKind::Internal, "singular Cartan matrix");
    std::swap(m[col], m[pivot]);
    const Rational inv = 1 / m[col][col];
    for (auto& v : m[col]) v *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col];
      for (int j = 0; j < 2 * n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  RationalMatrix out(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

std::vector<PositiveRoot> enumerate_positive_roots(const RootDatum& d) {
  const int r = d.rank();
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> layer;
  for (int i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1;
    layer.push_back(c);
    known.insert(c);
  }
  std::vector<std::vector<int>> all;
  while (!layer.empty()) {
    all.insert(all.end(), layer.begin(), layer.end());
    std::set<std::vector<int>> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < r; ++i) {
        // alpha_i-string through beta: p - q = <beta, alpha_i^vee> = b_i.
        int b = 0;
        for (int j = 0; j < r; ++j) b += beta[j] * d.cartan[j][i];
        int p = 0;
        std::vector<int> down = beta;
        while (true) {
          --down[i];
          if (down[i] < 0 || !known.count(down)) break;
          ++p;
        }
        if (p - b > 0) {
          std::vector<int> up = beta;
          ++up[i];
          next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    for (const auto& c : layer) known.insert(c);
  }

  std::vector<PositiveRoot> roots;
  roots.reserve(all.size());
  for (const auto& c : all) {
    PositiveRoot pr;
    pr.simpleCoeffs = c;
    pr.weightCoords = Weight::zero(r);
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) pr.weightCoords[i] += c[j] * d.cartan[j][i];
    Rational sq = 0;
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) sq += Rational(c[j] * c[k] * d.cartan[j][k]) * d.rootLengthsHalf[k];
    pr.halfSquare = sq / 2;
    pr.scaledPairing.resize(r);
    for (int i = 0; i < r; ++i) {
      const Rational v = Rational(d.lengthRatio * c[i]) * d.rootLengthsHalf[i];
      if (v.denominator() != 1) fail(ErrorKind::Internal, "non-integral scaled pairing");
      pr.scaledPairing[i] = v.numerator();
    }
    roots.push_back(std::move(pr));
  }
  std::sort(roots.begin(), roots.end(), [](const PositiveRoot& a, const PositiveRoot& b) {
    const int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.simpleCoeffs < b.simpleCoeffs;
  });
  return roots;
}

}  // namespace

Family AlgebraId::parse_family(const std::string& text) {
  if (text.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (c >= 'A' && c <= 'G') return static_cast<Family>(c);
  }
  fail(ErrorKind::Parameter, "unknown algebra family '" + text + "' (expected one of A-G)");
}

void AlgebraId::validate() const {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 3; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok) fail(ErrorKind::Parameter, "invalid rank " + std::to_string(rank) + " for family " + name().substr(0, 1));
}

std::string AlgebraId::name() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

bool Weight::is_dominant() const {
  return std::all_of(labels.begin(), labels.end(), [](int v) { return v >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(labels.begin(), labels.end(), [](int v) { return v == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.labels.size() != labels.size()) fail(ErrorKind::Parameter, "weight length mismatch");
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] += o.labels[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.labels.size() != labels.size()) fail(ErrorKind::Parameter, "weight length mismatch");
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] -= o.labels[i];
  return *this;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << ')';
  return os.str();
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : w.labels) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 0x100000001b3ULL;
  }
  return h;
}

int PositiveRoot::height() const { return std::accumulate(simpleCoeffs.begin(), simpleCoeffs.end(), 0); }

Weight RootDatum::simple_root(int i) const { return Weight(cartan[i]); }

std::int64_t RootDatum::scaled_inner(const Weight& x, const Weight& y) const {
  const int r = rank();
  std::int64_t sum = 0;
  for (int i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < r; ++j) row += formNumerators[i][j] * y[j];
    sum += x[i] * row;
  }
  return sum;
}

std::int64_t RootDatum::scaled_pairing(const Weight& x, const PositiveRoot& alpha) const {
  std::int64_t s = 0;
  for (int i = 0; i < rank(); ++i) s += x[i] * alpha.scaledPairing[i];
  return s;
}

Rational RootDatum::height(const Weight& x) const {
  Rational h = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) h += x[i] * inverseCartan[i][j];
  return h;
}

RootDatum build_root_datum(AlgebraId algebra) {
  algebra.validate();
  RootDatum d;
  d.algebra = algebra;
  const int r = algebra.rank;
  d.cartan = cartan_matrix(algebra);
  d.lengthRatio = length_ratio(algebra.family);
  const auto shortRoots = short_simple_roots(algebra);
  d.rootLengthsHalf.resize(r);
  for (int j = 0; j < r; ++j) d.rootLengthsHalf[j] = shortRoots[j] ? Rational(1, d.lengthRatio) : Rational(1);

  d.inverseCartan = invert(d.cartan);
  d.quadraticForm.assign(r, std::vector<Rational>(r));
  std::int64_t den = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      d.quadraticForm[i][j] = d.inverseCartan[i][j] * d.rootLengthsHalf[j];
      den = std::lcm(den, d.quadraticForm[i][j].denominator());
    }
  d.formDenominator = den;
  d.formNumerators.assign(r, std::vector<std::int64_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Rational v = d.quadraticForm[i][j] * den;
      d.formNumerators[i][j] = v.numerator();
    }

  d.rho = Weight(std::vector<int>(r, 1));
  d.positiveRoots = enumerate_positive_roots(d);
  d.dimension = r + 2 * static_cast<int>(d.positiveRoots.size());

  const PositiveRoot* highest = &d.positiveRoots.front();
  const PositiveRoot* highestShort = nullptr;
  for (const auto& pr : d.positiveRoots) {
    if (pr.height() > highest->height()) highest = &pr;
    if (pr.halfSquare < 1 && (!highestShort || pr.height() > highestShort->height())) highestShort = &pr;
  }
  d.highestRoot = highest->weightCoords;
  if (d.lengthRatio > 1 && highestShort) d.highestShortRoot = highestShort->weightCoords;

  const Rational rhoTheta = inner_product(d, d.rho, d.highestRoot);
  if (rhoTheta.denominator() != 1) fail(ErrorKind::Internal, "non-integral <rho, theta>");
  d.dualCoxeter = static_cast<int>(rhoTheta.numerator()) + 1;
  return d;
}

Rational inner_product(const RootDatum& datum, const Weight& x, const Weight& y) {
  if (x.rank() != datum.rank() || y.rank() != datum.rank())
    fail(ErrorKind::Parameter, "weight length does not match the rank");
  return Rational(datum.scaled_inner(x, y), datum.formDenominator);
}

Rational scaled_inner_product(const RootDatum& datum, const Weight& x, const Weight& y) {
  return inner_product(datum, x, y) * datum.lengthRatio;
}

Weight reflect(const RootDatum& datum, Weight x, int i) {
  const int c = x[i];
  if (c == 0) return x;
  for (int j = 0; j < datum.rank(); ++j) x[j] -= c * datum.cartan[i][j];
  return x;
}

DominantImage make_dominant(const RootDatum& datum, Weight x) {
  int sign = 1;
  const int r = datum.rank();
  while (true) {
    int i = 0;
    while (i < r && x[i] >= 0) ++i;
    if (i == r) break;
    x = reflect(datum, std::move(x), i);
    sign = -sign;
  }
  // A regular dominant image means no point of the orbit lies on a wall.
  for (int v : x.labels)
    if (v == 0) return {std::move(x), 0};
  return {std::move(x), sign};
}

std::int64_t weyl_dimension(const RootDatum& datum, const Weight& lambda) {
  using boost::multiprecision::cpp_int;
  const Weight shifted = lambda + datum.rho;
  cpp_int num = 1, den = 1;
  for (const auto& alpha : datum.positiveRoots) {
    num *= datum.scaled_pairing(shifted, alpha);
    den *= datum.scaled_pairing(datum.rho, alpha);
  }
  if (num % den != 0) fail(ErrorKind::Internal, "non-integral Weyl dimension");
  const cpp_int q = num / den;
  if (q > std::numeric_limits<std::int64_t>::max()) fail(ErrorKind::Capability, "Weyl dimension overflows int64");
  return static_cast<std::int64_t>(q);
}

std::map<Weight, std::int64_t> dominant_multiplicities(const RootDatum& datum, const Weight& lambda) {
  if (lambda.rank() != datum.rank()) fail(ErrorKind::Parameter, "weight length does not match the rank");
  if (!lambda.is_dominant()) fail(ErrorKind::Parameter, "weight " + lambda.to_string() + " is not dominant");

  // Dominant weights below lambda, connected by subtracting positive roots.
  std::vector<Weight> dominant{lambda};
  std::unordered_map<Weight, std::size_t, WeightHash> seen{{lambda, 0}};
  for (std::size_t at = 0; at < dominant.size(); ++at) {
    for (const auto& alpha : datum.positiveRoots) {
      Weight next = dominant[at] - alpha.weightCoords;
      if (!next.is_dominant() || seen.count(next)) continue;
      seen.emplace(next, dominant.size());
      dominant.push_back(std::move(next));
    }
  }
  std::vector<std::pair<Rational, Weight>> byDepth;
  byDepth.reserve(dominant.size());
  for (auto& w : dominant) byDepth.emplace_back(datum.height(lambda - w), w);
  std::sort(byDepth.begin(), byDepth.end());

  const Weight lambdaRho = lambda + datum.rho;
  const std::int64_t topNorm = datum.scaled_inner(lambdaRho, lambdaRho);
  std::unordered_map<Weight, std::int64_t, WeightHash> mult;
  mult.emplace(lambda, 1);
  auto lookup = [&](const Weight& w) -> std::int64_t {
    const auto dom = make_dominant(datum, w);
    const auto it = mult.find(dom.weight);
    return it == mult.end() ? 0 : it->second;
  };

  for (std::size_t n = 1; n < byDepth.size(); ++n) {
    const Weight& mu = byDepth[n].second;
    std::int64_t sum = 0;
    for (const auto& alpha : datum.positiveRoots) {
      Weight w = mu;
      while (true) {
        w += alpha.weightCoords;
        const std::int64_t m = lookup(w);
        if (m == 0) break;
        sum += m * datum.scaled_inner(w, alpha.weightCoords);
      }
    }
    const Weight muRho = mu + datum.rho;
    const std::int64_t gap = topNorm - datum.scaled_inner(muRho, muRho);
    if (gap <= 0 || (2 * sum) % gap != 0)
      fail(ErrorKind::Internal, "Freudenthal recursion produced a non-integral multiplicity at " + mu.to_string());
    mult.emplace(mu, 2 * sum / gap);
  }
  return {mult.begin(), mult.end()};
}

std::map<Weight, std::int64_t> weight_multiplicities(const RootDatum& datum, const Weight& lambda) {
  std::map<Weight, std::int64_t> out;
  for (const auto& [mu, m] : dominant_multiplicities(datum, lambda)) {
    std::vector<Weight> stack{mu};
    out.emplace(mu, m);
    while (!stack.empty()) {
      const Weight x = std::move(stack.back());
      stack.pop_back();
      for (int i = 0; i < datum.rank(); ++i) {
        if (x[i] <= 0) continue;
        Weight y = reflect(datum, x, i);
        if (out.emplace(y, m).second) stack.push_back(std::move(y));
      }
    }
  }
  return out;
}

Weight dual_weight(const RootDatum& datum, const Weight& lambda) {
  if (lambda.rank() != datum.rank()) fail(ErrorKind::Parameter, "weight length does not match the rank");
  if (!lambda.is_dominant()) fail(ErrorKind::Parameter, "weight " + lambda.to_string() + " is not dominant");
  Weight out = lambda;
  const int r = datum.rank();
  switch (datum.algebra.family) {
    case Family::A:
      std::reverse(out.labels.begin(), out.labels.end());
      break;
    case Family::D:
      if (r % 2 == 1) std::swap(out[r - 2], out[r - 1]);
      break;
    case Family::E:
      if (r == 6) {
        std::swap(out[0], out[4]);
        std::swap(out[1], out[3]);
      }
      break;
    default:
      break;
  }
  return out;
}

std::shared_ptr<const WeightSystemCache::Entries> WeightSystemCache::get(const Weight& lambda) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(lambda); it != entries_.end()) return it->second;
  }
  const auto system = weight_multiplicities(datum_, lambda);
  auto built = std::make_shared<const Entries>(system.begin(), system.end());
  std::lock_guard lock(mutex_);
  return entries_.emplace(lambda, std::move(built)).first->second;
}

std::int64_t WeightSystemCache::dimension(const Weight& lambda) {
  std::int64_t total = 0;
  for (const auto& [w, m] : *get(lambda)) total += m;
  return total;
}

}  // namespace rtc
