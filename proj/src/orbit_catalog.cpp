#include "galilax/orbit_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "galilax/errors.hpp"

namespace galilax {

namespace {

constexpr int kOracleMaxHalfSize = 12;

std::string sup(const std::string& base, int k) { return k == 1 ? base : base + "^" + std::to_string(k); }

// Averages each group of equal frequencies so the oracle sees exact ties.
std::vector<double> canonical_frequencies(const std::vector<double>& omega_sq, const std::vector<int>& mult) {
  std::vector<double> out;
  std::size_t i = 0;
  for (int k : mult) {
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += omega_sq[i + j];
    for (int j = 0; j < k; ++j) out.push_back(sum / k);
    i += k;
  }
  return out;
}

struct Composition {
  std::vector<IsotropyFactor> factors;
  std::string name;
};

Composition compose(const InvariantSignature& sig, int m, const std::vector<int>& mult) {
  using K = IsotropyFactor::Kind;
  Composition c;
  std::vector<std::string> parts;
  for (int k : mult) {
    const IsotropyFactor f = k == 1 ? IsotropyFactor{K::so, 2} : IsotropyFactor{K::u, k};
    c.factors.push_back(f);
    parts.push_back(f.name());
  }

  const int q = sig.q;
  const int f = m - sig.p - q;
  std::string zero;
  if (q == 0) {
    if (f > 0) {
      c.factors.push_back({K::sp, f});
      zero = IsotropyFactor{K::sp, f}.name();
    }
  } else if (q == 1) {
    IsotropyFactor radical = (sig.p == 0 && f > 0) ? IsotropyFactor{K::heis, f} : IsotropyFactor{K::real, 2 * f + 1};
    std::string rad = radical.kind == K::heis ? "(" + radical.name() + ")" : radical.name();
    if (f > 0) {
      c.factors.push_back({K::sp, f});
      zero = IsotropyFactor{K::sp, f}.name() + " ⋉ " + rad;
    } else {
      zero = rad;
    }
    c.factors.push_back(radical);
  } else if (f == 0) {
    c.factors.push_back({K::so, q});
    c.factors.push_back({K::symm, q});
    zero = IsotropyFactor{K::so, q}.name() + " ⋉ " + IsotropyFactor{K::symm, q}.name();
  } else {
    c.factors.push_back({K::so, q});
    c.factors.push_back({K::sp, f});
    c.factors.push_back({K::symm, q});
    c.factors.push_back({K::pairing, q, f});
    zero = "(" + IsotropyFactor{K::so, q}.name() + " × " + IsotropyFactor{K::sp, f}.name() + ") ⋉ (" +
           IsotropyFactor{K::symm, q}.name() + " × " + IsotropyFactor{K::pairing, q, f}.name() + ")";
    if (!parts.empty()) zero = "[" + zero + "]";
  }
  if (!zero.empty()) parts.push_back(zero);

  for (std::size_t i = 0; i < parts.size(); ++i) c.name += (i ? " × " : "") + parts[i];
  return c;
}

// Families whose isotropy is known in closed form without the oracle.
bool closed_form_family(const InvariantSignature& sig, int m, const std::vector<int>& mult) {
  const bool distinct = std::all_of(mult.begin(), mult.end(), [](int k) { return k == 1; });
  if (sig.p == m && sig.q == 0) return distinct || mult.size() == 1;
  if (sig.p == m - 1 && sig.q == 1) return distinct;
  return sig.p == 0 && sig.q >= 1;
}

}  // namespace

int IsotropyFactor::dimension() const {
  switch (kind) {
    case Kind::so: return a * (a - 1) / 2;
    case Kind::u: return a * a;
    case Kind::sp: return a * (2 * a + 1);
    case Kind::torus: return a;
    case Kind::real: return a;
    case Kind::symm: return a * (a + 1) / 2;
    case Kind::heis: return 2 * a + 1;
    case Kind::pairing: return 2 * a * b;
  }
  return 0;
}

std::string IsotropyFactor::name() const {
  switch (kind) {
    case Kind::so: return "SO(" + std::to_string(a) + ")";
    case Kind::u: return "U(" + std::to_string(a) + ")";
    case Kind::sp: return "Sp(" + std::to_string(2 * a) + ")";
    case Kind::torus: return sup("T", a);
    case Kind::real: return sup("ℝ", a);
    case Kind::symm: return "symm(" + std::to_string(a) + ")";
    case Kind::heis: return "Heis_" + std::to_string(a);
    case Kind::pairing: return "P_{" + std::to_string(a) + "," + std::to_string(b) + "}";
  }
  return {};
}

std::vector<int> frequency_multiplicities(const std::vector<double>& omega_sq, double rel_tol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < omega_sq.size(); ++i) {
    const double scale = std::max(std::abs(omega_sq[i]), std::abs(out.empty() ? 0.0 : omega_sq[i - 1]));
    if (i > 0 && std::abs(omega_sq[i] - omega_sq[i - 1]) <= rel_tol * scale)
      ++out.back();
    else
      out.push_back(1);
  }
  return out;
}

int isotropy_dimension_numeric(const Matrix& g, double tol) {
  const int size = static_cast<int>(g.rows());
  if (size % 2 != 0) throw InvalidInput("Gram matrix must have even size");
  const Matrix j = symplectic_j(size / 2);
  const Matrix k = j * g;
  const int unknowns = size * (size + 1) / 2;
  Matrix map(size * size, unknowns);
  int col = 0;
  for (int a = 0; a < size; ++a) {
    for (int b = a; b < size; ++b) {
      Matrix s = Matrix::Zero(size, size);
      s(a, b) = s(b, a) = 1.0;
      const Matrix js = j * s;
      map.col(col++) = Eigen::Map<const Vector>(commutator(js, k).eval().data(), size * size);
    }
  }
  return unknowns - numerical_rank(map, tol);
}

int isotropy_dimension_formula(const InvariantSignature& sig, int m, const std::vector<int>& multiplicities) {
  int dim = 0;
  for (const auto& f : compose(sig, m, multiplicities).factors) dim += f.dimension();
  return dim;
}

OrbitDescriptor orbit_dimension(const InvariantSignature& sig, int m) {
  validate_signature(sig, m);
  OrbitDescriptor out;
  out.multiplicities = frequency_multiplicities(sig.omega_sq);
  out.signature = sig;
  out.signature.m = m;
  out.signature.omega_sq = canonical_frequencies(sig.omega_sq, out.multiplicities);

  const Composition comp = compose(out.signature, m, out.multiplicities);
  const int formula = isotropy_dimension_formula(out.signature, m, out.multiplicities);
  int iso = formula;
  bool confirmed = true;
  if (m <= kOracleMaxHalfSize) {
    iso = isotropy_dimension_numeric(normal_form_matrix(out.signature, m).g());
    confirmed = iso == formula;
  } else if (!closed_form_family(out.signature, m, out.multiplicities)) {
    throw UnsupportedCase("isotropy of (p, q) = (" + std::to_string(sig.p) + ", " + std::to_string(sig.q) +
                          ") with m = " + std::to_string(m) + " lies outside the closed-form case families");
  }

  out.isotropy.factors = comp.factors;
  out.isotropy.classified = confirmed;
  out.isotropy.name = confirmed ? comp.name : "unclassified";
  out.isotropy.dimension = iso;
  out.isotropy_dim = iso;
  out.dimension = m * (2 * m + 1) - iso;
  out.closed = sig.q == 0;
  out.motion_dim = 2 * sig.p + sig.q;
  out.generic = out.dimension == generic_orbit_dimension(m);
  return out;
}

std::vector<InvariantSignature> closure_strata(const InvariantSignature& sig) {
  std::vector<InvariantSignature> out;
  for (int q = sig.q; q >= 0; --q) {
    InvariantSignature s = sig;
    s.q = q;
    out.push_back(std::move(s));
  }
  return out;
}

SpatialReductionReport spatial_reduction_report(int n) {
  if (n < 3) throw InvalidInput("the spatial reduction report needs n >= 3");
  SpatialReductionReport r;
  r.n = n;
  r.reduced_dim = 6 * n - 10;
  r.cone_link_dim = 2 * n - 5;
  r.planar_codim = 2 * (n - 2);
  r.smooth_factor_dim = 4 * n - 6;
  r.cone_link = "RP^" + std::to_string(r.cone_link_dim);
  r.local_model = "Cone(" + r.cone_link + ") × ℝ^" + std::to_string(r.smooth_factor_dim);
  r.zero_momentum_strata = {{0, "0"},
                            {1, "½y₁²"},
                            {2, "½(y₁² + y₂²)"},
                            {3, "½(y₁² + y₂² + y₃²)"}};
  r.rotation_cover = "2:1 branched cover branched over the singular locus";
  return r;
}

std::vector<TableRow> catalog_table(int n) {
  struct RowKey {
    std::string label;
    int p, q;
    std::vector<double> omega_sq;
  };
  std::vector<RowKey> keys;
  if (n == 3) {
    keys = {{"2 (nondeg.)", 2, 0, {2.0, 1.0}}, {"2 (deg.)", 2, 0, {1.0, 1.0}}, {"1", 1, 1, {1.0}},
             {"1", 1, 0, {1.0}},                {"0", 0, 2, {}},                  {"0", 0, 1, {}}};
  } else if (n == 4) {
    keys = {{"1", 1, 1, {1.0}}, {"1", 1, 0, {1.0}}, {"0", 0, 3, {}}, {"0", 0, 2, {}}, {"0", 0, 1, {}}};
  } else {
    throw InvalidInput("catalog tables exist for n = 3 and n = 4 only");
  }
  const int m = n - 1;
  std::vector<TableRow> rows;
  for (const auto& s : keys) {
    InvariantSignature sig{s.p, s.q, s.omega_sq, m};
    TableRow row;
    row.orbit = orbit_dimension(sig, m);
    row.p_label = s.label;
    row.q = s.q;
    row.isotropy = row.orbit.isotropy.name;
    row.dimension = row.orbit.dimension;
    row.d = row.orbit.motion_dim;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_table(int n) {
  const auto rows = catalog_table(n);
  const int m = n - 1;
  std::ostringstream os;
  os << "# n = " << n << ", sp(" << 2 * m << ") of dimension " << m * (2 * m + 1) << ", generic orbit dimension "
     << generic_orbit_dimension(m) << "\n";
  os << "p\tq\tisotropy\tdim\td\n";
  for (const auto& r : rows)
    os << r.p_label << "\t" << r.q << "\t" << r.isotropy << "\t" << r.dimension << "\t" << r.d << "\n";
  return os.str();
}

}  // namespace galilax
