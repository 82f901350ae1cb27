#include "cpev/geometry/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cpev/errors.hpp"

namespace cpev::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Jet> variables_at(const JetLayout& layout, std::span<const double> x) {
  std::vector<Jet> vars;
  vars.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vars.push_back(Jet::variable(layout, static_cast<int>(i), x[i]));
  return vars;
}

std::size_t packed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i));
}

double binomial(int n, int k) {
  if (k < 0 || n < k) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Diagonal round-sphere metric block, appended into `packed` of a dim-n metric.
void add_round_block(std::vector<Jet>& packed, int n, const SphereFactor& f, std::span<const Jet> x) {
  const double r2 = f.radius * f.radius;
  Jet running(x[0].layout(), r2);
  for (int k = 0; k < f.dim; ++k) {
    packed[packed_index(n, f.offset + k, f.offset + k)] = running;
    if (k + 1 < f.dim) {
      const Jet s = sin(x[static_cast<std::size_t>(f.offset + k)]);
      running = running * (s * s);
    }
  }
}

CoordinateBox sphere_box(int n) {
  CoordinateBox box;
  box.lower.assign(static_cast<std::size_t>(n), 0.0);
  box.upper.assign(static_cast<std::size_t>(n), kPi);
  box.upper.back() = 2.0 * kPi;
  return box;
}

double unit_weight(std::span<const double>) { return 1.0; }

}  // namespace

bool CoordinateBox::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > lower[i] && x[i] < upper[i])) return false;
  return true;
}

MetricDerivatives metric_derivatives(const Chart& chart, std::span<const double> x) {
  const int n = chart.domain.dim();
  const JetLayout& layout = JetLayout::get(n, 3);
  const std::vector<Jet> vars = variables_at(layout, x);
  const std::vector<Jet> packed = chart.metric(vars);

  MetricDerivatives out;
  out.dim = n;
  out.g = Matrix(n);
  out.dg = Rank3(n);
  out.d2g = Rank4(n);
  out.d3g = Rank5(n);
  const std::size_t n1 = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Jet& c = packed[packed_index(n, i, j)];
      const double v = c.value();
      out.g(i, j) = v;
      out.g(j, i) = v;
      for (std::size_t a = 0; a < n1; ++a) {
        const double da = c.partial_flat(1, a);
        out.dg(i, j, a) = da;
        out.dg(j, i, a) = da;
        for (std::size_t b = 0; b < n1; ++b) {
          const double dab = c.partial_flat(2, a * n1 + b);
          out.d2g(i, j, a, b) = dab;
          out.d2g(j, i, a, b) = dab;
          for (std::size_t e = 0; e < n1; ++e) {
            const double dabe = c.partial_flat(3, (a * n1 + b) * n1 + e);
            out.d3g(i, j, a, b, e) = dabe;
            out.d3g(j, i, a, b, e) = dabe;
          }
        }
      }
    }
  }
  return out;
}

Matrix metric_value(const Chart& chart, std::span<const double> x) {
  const int n = chart.domain.dim();
  const JetLayout& layout = JetLayout::get(n, 0);
  std::vector<Jet> vars;
  for (double v : x) vars.emplace_back(layout, v);
  const std::vector<Jet> packed = chart.metric(vars);
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      g(i, j) = packed[packed_index(n, i, j)].value();
      g(j, i) = g(i, j);
    }
  return g;
}

ScalarDerivatives evaluate(const ScalarField& field, int chart, std::span<const double> x, int order) {
  if (order > field.max_order)
    throw CapabilityError("field '" + field.name + "' provides partials only to order " +
                          std::to_string(field.max_order) + ", requested " + std::to_string(order));
  const int n = static_cast<int>(x.size());
  const JetLayout& layout = JetLayout::get(n, order);
  const std::vector<Jet> vars = variables_at(layout, x);
  const Jet f = field.expression(chart, vars);

  ScalarDerivatives out;
  out.dim = n;
  out.order = order;
  out.value = f.value();
  out.d1.assign(static_cast<std::size_t>(n), 0.0);
  out.d2 = Matrix(n);
  out.d3 = Rank3(n);
  out.d4 = Rank4(n);
  const std::size_t n1 = static_cast<std::size_t>(n);
  for (std::size_t a = 0; a < n1; ++a) {
    if (order >= 1) out.d1[a] = f.partial_flat(1, a);
    for (std::size_t b = 0; b < n1 && order >= 2; ++b) {
      out.d2(a, b) = f.partial_flat(2, a * n1 + b);
      for (std::size_t c = 0; c < n1 && order >= 3; ++c) {
        out.d3(a, b, c) = f.partial_flat(3, (a * n1 + b) * n1 + c);
        for (std::size_t d = 0; d < n1 && order >= 4; ++d)
          out.d4(a, b, c, d) = f.partial_flat(4, ((a * n1 + b) * n1 + c) * n1 + d);
      }
    }
  }
  return out;
}

double sphere_volume(int n, double r) {
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1)) * std::pow(r, n);
}

std::vector<SpectrumLevel> sphere_spectrum(int n, double r, int max_degree) {
  std::vector<SpectrumLevel> levels;
  for (int k = 0; k <= max_degree; ++k) {
    const double mult = binomial(n + k, n) - binomial(n + k - 2, n);
    levels.push_back({k * (k + n - 1) / (r * r), static_cast<long long>(std::llround(mult))});
  }
  return levels;
}

std::vector<SpectrumLevel> minkowski_sum(const std::vector<SpectrumLevel>& a, const std::vector<SpectrumLevel>& b) {
  if (a.empty() || b.empty()) return {};
  // Sums are complete only below the smaller of the two truncation ceilings.
  const double ceiling = std::min(a.back().eigenvalue, b.back().eigenvalue);
  std::vector<SpectrumLevel> sums;
  for (const auto& x : a)
    for (const auto& y : b) {
      const double v = x.eigenvalue + y.eigenvalue;
      if (v <= ceiling * (1.0 + 1e-12)) sums.push_back({v, x.multiplicity * y.multiplicity});
    }
  std::sort(sums.begin(), sums.end(), [](const SpectrumLevel& p, const SpectrumLevel& q) { return p.eigenvalue < q.eigenvalue; });
  std::vector<SpectrumLevel> merged;
  for (const auto& s : sums) {
    if (!merged.empty() && std::abs(merged.back().eigenvalue - s.eigenvalue) <= 1e-12 * (1.0 + s.eigenvalue))
      merged.back().multiplicity += s.multiplicity;
    else
      merged.push_back(s);
  }
  return merged;
}

ChartedManifold sphere(int n, double r) {
  if (n < 2 || n > 4) throw InputError("catalog spheres have dimension 2..4, got " + std::to_string(n));
  if (!(r > 0.0)) throw InputError("sphere radius must be positive");
  ChartedManifold m;
  m.name = "S^" + std::to_string(n) + "(" + std::to_string(r) + ")";
  m.dim = n;
  const SphereFactor factor{0, n, r};
  m.sphere_factors = {factor};
  Chart chart;
  chart.domain = sphere_box(n);
  chart.metric = [n, factor](std::span<const Jet> x) {
    std::vector<Jet> packed(static_cast<std::size_t>(n * (n + 1) / 2), Jet(x[0].layout(), 0.0));
    add_round_block(packed, n, factor, x);
    return packed;
  };
  chart.weight = unit_weight;
  m.charts = {chart};
  m.analytic_spectrum = sphere_spectrum(n, r, 24);
  m.known_volume = sphere_volume(n, r);
  return m;
}

ChartedManifold product(const ChartedManifold& m1, const ChartedManifold& m2) {
  if (m1.charts.size() != 1 || m2.charts.size() != 1)
    throw InputError("product is defined for single-chart catalog factors");
  const int n1 = m1.dim, n2 = m2.dim, n = n1 + n2;
  if (n > kMaxJetVariables) throw InputError("product dimension exceeds " + std::to_string(kMaxJetVariables));

  ChartedManifold m;
  m.name = m1.name + " x " + m2.name;
  m.dim = n;
  for (auto f : m1.sphere_factors) m.sphere_factors.push_back(f);
  for (auto f : m2.sphere_factors) {
    f.offset += n1;
    m.sphere_factors.push_back(f);
  }

  const Chart& c1 = m1.charts[0];
  const Chart& c2 = m2.charts[0];
  Chart chart;
  chart.domain.lower = c1.domain.lower;
  chart.domain.upper = c1.domain.upper;
  chart.domain.lower.insert(chart.domain.lower.end(), c2.domain.lower.begin(), c2.domain.lower.end());
  chart.domain.upper.insert(chart.domain.upper.end(), c2.domain.upper.begin(), c2.domain.upper.end());
  chart.metric = [n1, n2, n, g1 = c1.metric, g2 = c2.metric](std::span<const Jet> x) {
    std::vector<Jet> packed(static_cast<std::size_t>(n * (n + 1) / 2), Jet(x[0].layout(), 0.0));
    const std::vector<Jet> a = g1(x.subspan(0, static_cast<std::size_t>(n1)));
    const std::vector<Jet> b = g2(x.subspan(static_cast<std::size_t>(n1), static_cast<std::size_t>(n2)));
    for (int i = 0; i < n1; ++i)
      for (int j = i; j < n1; ++j) packed[packed_index(n, i, j)] = a[packed_index(n1, i, j)];
    for (int i = 0; i < n2; ++i)
      for (int j = i; j < n2; ++j) packed[packed_index(n, n1 + i, n1 + j)] = b[packed_index(n2, i, j)];
    return packed;
  };
  chart.weight = [n1, w1 = c1.weight, w2 = c2.weight](std::span<const double> x) {
    return w1(x.subspan(0, static_cast<std::size_t>(n1))) * w2(x.subspan(static_cast<std::size_t>(n1)));
  };
  m.charts = {chart};
  if (m1.analytic_spectrum && m2.analytic_spectrum)
    m.analytic_spectrum = minkowski_sum(*m1.analytic_spectrum, *m2.analytic_spectrum);
  if (m1.known_volume && m2.known_volume) m.known_volume = *m1.known_volume * *m2.known_volume;
  return m;
}

ChartedManifold conformal_sphere(int n, double r, double epsilon, std::vector<double> coefficients) {
  ChartedManifold base = sphere(n, r);
  if (static_cast<int>(coefficients.size()) != n + 1)
    throw InputError("conformal factor needs one coefficient per ambient axis (" + std::to_string(n + 1) + ")");
  ChartedManifold m;
  m.name = "conformal " + base.name;
  m.dim = n;
  m.sphere_factors = base.sphere_factors;
  const SphereFactor factor = base.sphere_factors[0];
  Chart chart;
  chart.domain = base.charts[0].domain;
  chart.metric = [n, factor, epsilon, coefficients, round = base.charts[0].metric](std::span<const Jet> x) {
    Jet u(x[0].layout(), 0.0);
    for (int a = 0; a <= n; ++a)
      if (coefficients[static_cast<std::size_t>(a)] != 0.0)
        u += (epsilon * coefficients[static_cast<std::size_t>(a)] / factor.radius) * ambient_coordinate(factor, x, a + 1);
    const Jet scale = exp(2.0 * u);
    std::vector<Jet> packed = round(x);
    for (auto& c : packed) c = scale * c;
    return packed;
  };
  chart.weight = unit_weight;
  m.charts = {chart};
  return m;
}

ChartedManifold flat_torus(int n, double period) {
  if (n < 1 || n > kMaxJetVariables) throw InputError("flat torus dimension out of range");
  ChartedManifold m;
  m.name = "T^" + std::to_string(n);
  m.dim = n;
  Chart chart;
  chart.domain.lower.assign(static_cast<std::size_t>(n), 0.0);
  chart.domain.upper.assign(static_cast<std::size_t>(n), period);
  chart.metric = [n](std::span<const Jet> x) {
    std::vector<Jet> packed(static_cast<std::size_t>(n * (n + 1) / 2), Jet(x[0].layout(), 0.0));
    for (int i = 0; i < n; ++i) packed[packed_index(n, i, i)] = Jet(x[0].layout(), 1.0);
    return packed;
  };
  chart.weight = unit_weight;
  m.charts = {chart};
  m.known_volume = std::pow(period, n);
  return m;
}

Jet ambient_coordinate(const SphereFactor& f, std::span<const Jet> x, int axis) {
  if (axis < 1 || axis > f.dim + 1)
    throw InputError("ambient axis must lie in 1.." + std::to_string(f.dim + 1) + ", got " + std::to_string(axis));
  // x_1 = r cos t_1, x_k = r sin t_1 ... sin t_{k-1} cos t_k, x_{n+1} = r sin t_1 ... sin t_n.
  Jet out(x[0].layout(), f.radius);
  const int last_angle = std::min(axis, f.dim);
  for (int k = 1; k < last_angle; ++k) out = out * sin(x[static_cast<std::size_t>(f.offset + k - 1)]);
  if (axis <= f.dim)
    out = out * cos(x[static_cast<std::size_t>(f.offset + axis - 1)]);
  else
    out = out * sin(x[static_cast<std::size_t>(f.offset + f.dim - 1)]);
  return out;
}

ScalarField factor_height_function(const ChartedManifold& m, int factor, int axis, double amplitude) {
  if (factor < 0 || factor >= static_cast<int>(m.sphere_factors.size()))
    throw InputError("manifold '" + m.name + "' has no sphere factor " + std::to_string(factor));
  const SphereFactor f = m.sphere_factors[static_cast<std::size_t>(factor)];
  if (axis < 1 || axis > f.dim + 1)
    throw InputError("height axis must lie in 1.." + std::to_string(f.dim + 1) + ", got " + std::to_string(axis));
  ScalarField field;
  field.name = "height(axis " + std::to_string(axis) + ", amplitude " + std::to_string(amplitude) + ")";
  field.expression = [f, axis, amplitude](int, std::span<const Jet> x) {
    if (amplitude == 0.0) return Jet(x[0].layout(), 0.0);
    return (amplitude / f.radius) * ambient_coordinate(f, x, axis);
  };
  return field;
}

ScalarField height_function(const ChartedManifold& m, int axis, double amplitude) {
  if (m.sphere_factors.size() != 1 || m.sphere_factors[0].dim != m.dim)
    throw InputError("height_function requires a catalog sphere, got '" + m.name + "'");
  return factor_height_function(m, 0, axis, amplitude);
}

ScalarField constant_field(double value) {
  ScalarField field;
  field.name = "constant(" + std::to_string(value) + ")";
  field.expression = [value](int, std::span<const Jet> x) { return Jet(x[0].layout(), value); };
  return field;
}

ScalarField field_from_expression(std::string name, FieldExpression expression, int max_order) {
  ScalarField field;
  field.name = std::move(name);
  field.max_order = max_order;
  field.expression = std::move(expression);
  return field;
}

}  // namespace cpev::geometry
