#include "gcvx/smcc.hpp"

#include <algorithm>
#include <stdexcept>

#include "gcvx/errors.hpp"

namespace gcvx::smcc {

using measurable::bit;
using measurable::MapInto;
using measurable::MapOutOf;

std::vector<std::string> product_points(const FinMeasSpace& left, const FinMeasSpace& right) {
  std::vector<std::string> pts;
  for (const auto& x : left.points()) {
    for (const auto& y : right.points()) pts.push_back("(" + x + "," + y + ")");
  }
  return pts;
}

namespace {

void check_product_guard(const FinMeasSpace& x, const FinMeasSpace& y) {
  if (x.size() * y.size() > kMaxProductPoints) {
    throw CapacityError("product carrier has " + std::to_string(x.size() * y.size()) + " points; guard is " +
                        std::to_string(kMaxProductPoints));
  }
}

MapInto left_graph(const SpaceRef& x, const SpaceRef& y, const std::vector<std::size_t>& f) {
  std::vector<std::size_t> m(x->size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = pair_index(i, f[i], y->size());
  return {x, std::move(m)};
}

MapInto right_graph(const SpaceRef& y, const std::vector<std::size_t>& g) {
  std::vector<std::size_t> m(y->size());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = pair_index(g[j], j, y->size());
  return {y, std::move(m)};
}

}  // namespace

TensorSpace tensor_space(const SpaceRef& x, const SpaceRef& y) {
  check_product_guard(*x, *y);
  std::vector<MapInto> all_graphs;
  for (const auto& f : measurable::enumerate_meas_fns(x, y)) all_graphs.push_back(left_graph(x, y, f.mapping()));
  for (const auto& g : measurable::enumerate_meas_fns(y, x)) all_graphs.push_back(right_graph(y, g.mapping()));

  std::vector<MapInto> constant_graphs;
  for (std::size_t j = 0; j < y->size(); ++j) {
    constant_graphs.push_back(left_graph(x, y, std::vector<std::size_t>(x->size(), j)));
  }
  for (std::size_t i = 0; i < x->size(); ++i) {
    constant_graphs.push_back(right_graph(y, std::vector<std::size_t>(y->size(), i)));
  }

  const auto pts = product_points(*x, *y);
  return TensorSpace{x, y, measurable::share(measurable::coinduced_sigma(pts, all_graphs)),
                     measurable::share(measurable::coinduced_sigma(pts, constant_graphs))};
}

FinMeasSpace product_space(const FinMeasSpace& x, const FinMeasSpace& y) {
  check_product_guard(x, y);
  std::vector<Subset> rectangles;
  for (Subset u : x.atoms()) {
    for (Subset v : y.atoms()) {
      Subset r = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
          if (measurable::has(u, i) && measurable::has(v, j)) r |= bit(pair_index(i, j, y.size()));
        }
      }
      rectangles.push_back(r);
    }
  }
  return measurable::generate_sigma(product_points(x, y), rectangles);
}

std::optional<std::size_t> FnSpace::find(const std::vector<std::size_t>& mapping) const {
  // elements are in lexicographic order of their mappings
  const auto it = std::lower_bound(elements.begin(), elements.end(), mapping,
                                   [](const MeasFn& e, const std::vector<std::size_t>& m) { return e.mapping() < m; });
  if (it == elements.end() || it->mapping() != mapping) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

FnSpace function_space(const SpaceRef& x, const SpaceRef& y) {
  auto elements = measurable::enumerate_meas_fns(x, y);
  std::vector<std::string> ids;
  for (const auto& e : elements) {
    std::string id = "[";
    for (std::size_t i = 0; i < x->size(); ++i) {
      if (i) id += ",";
      id += x->points()[i] + "->" + y->points()[e(i)];
    }
    ids.push_back(id + "]");
  }
  std::vector<MapOutOf> evaluations;
  for (std::size_t i = 0; i < x->size(); ++i) {
    std::vector<std::size_t> ev(elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) ev[k] = elements[k](i);
    evaluations.push_back({std::move(ev), y});
  }
  auto carrier = measurable::share(measurable::induced_sigma(std::move(ids), evaluations));
  return FnSpace{x, y, std::move(elements), std::move(carrier)};
}

std::vector<std::size_t> eval_mapping(const FnSpace& fs) {
  const std::size_t nf = fs.elements.size();
  std::vector<std::size_t> m(fs.base->size() * nf);
  for (std::size_t i = 0; i < fs.base->size(); ++i) {
    for (std::size_t k = 0; k < nf; ++k) m[pair_index(i, k, nf)] = fs.elements[k](i);
  }
  return m;
}

EvalMap eval_map(const SpaceRef& x, const SpaceRef& y) {
  auto fs = function_space(x, y);
  auto tensor = tensor_space(x, fs.carrier);
  auto mapping = eval_mapping(fs);
  if (!measurable::is_measurable(mapping, *tensor.carrier, *y).measurable) {
    throw std::logic_error("evaluation map failed to be measurable on the tensor sigma-algebra");
  }
  MeasFn ev(tensor.carrier, y, std::move(mapping));
  return EvalMap{std::move(fs), std::move(tensor), std::move(ev)};
}

MeasFn curry(const MeasFn& f, const TensorSpace& xz, const FnSpace& yx) {
  if (!(*f.dom() == *xz.carrier)) throw DomainError("curry: map is not defined on the tensor carrier");
  if (!(*xz.left == *yx.base) || !(*f.cod() == *yx.target)) throw DomainError("curry: function space mismatch");
  const std::size_t nx = xz.left->size();
  const std::size_t nz = xz.right->size();
  std::vector<std::size_t> m(nz);
  for (std::size_t z = 0; z < nz; ++z) {
    std::vector<std::size_t> section(nx);
    for (std::size_t x = 0; x < nx; ++x) section[x] = f(pair_index(x, z, nz));
    const auto idx = yx.find(section);
    if (!idx) throw MeasurabilityError("curry: section at z = " + xz.right->points()[z] + " is not measurable");
    m[z] = *idx;
  }
  return MeasFn(xz.right, yx.carrier, std::move(m));
}

MeasFn uncurry(const MeasFn& g, const TensorSpace& xz, const FnSpace& yx) {
  if (!(*g.dom() == *xz.right) || !(*g.cod() == *yx.carrier)) throw DomainError("uncurry: space mismatch");
  const std::size_t nx = xz.left->size();
  const std::size_t nz = xz.right->size();
  std::vector<std::size_t> m(nx * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t z = 0; z < nz; ++z) m[pair_index(x, z, nz)] = yx.elements[g(z)](x);
  }
  return MeasFn(xz.carrier, yx.target, std::move(m));
}

int ge_map(const Rational& u, const Rational& v) {
  if (!u.in_unit_interval() || !v.in_unit_interval()) throw DomainError("ge_map arguments must lie in [0,1]");
  return v <= u ? 1 : 0;
}

StepFn down_map(const Rational& u) {
  if (!u.in_unit_interval()) throw DomainError("down_map argument must lie in [0,1]: " + u.str());
  if (u == Rational(1)) return StepFn::constant(1);
  if (u.is_zero()) return StepFn({0, 1}, {0}, 0);
  return StepFn({0, u, 1}, {1, 0}, 0);
}

bool LebesgueReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const LebesgueEntry& e) { return e.passed; });
}

LebesgueReport lebesgue_section_check(const std::vector<Rational>& samples,
                                      const std::vector<Rational>& functional_values, const Integrator& integrate) {
  LebesgueReport report;
  auto run = [&](const Rational& u) {
    const Rational value = integrate(down_map(u));
    report.entries.push_back({u, value, value == u});
  };
  for (const auto& u : samples) run(u);
  for (const auto& p : functional_values) run(p);
  return report;
}

}  // namespace gcvx::smcc
