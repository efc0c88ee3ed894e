#include "rotalg/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotalg {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

ModuliParams::ModuliParams(double theta, std::optional<Rational> exact) : theta_(theta), exact_(exact) {
  if (!(theta > 0.0 && theta < 0.25) || !std::isfinite(theta))
    throw std::domain_error("theta = " + std::to_string(theta) +
                            " is outside (0, 1/4): the construction needs beta = 1/sqrt(theta) > 2 so that "
                            "beta^2 = 4(alpha^2 + 1) has alpha > 0");
  beta_sq_ = 1.0 / theta;
  beta_ = 1.0 / std::sqrt(theta);
  alpha_ = std::sqrt((1.0 - 4.0 * theta) / (4.0 * theta));
}

ModuliParams ModuliParams::from_theta(double theta) { return ModuliParams(theta, std::nullopt); }

ModuliParams ModuliParams::from_rational(Rational theta) { return ModuliParams(theta.to_double(), theta); }

ModuliParams ModuliParams::from_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::domain_error("alpha must be positive");
  ModuliParams p(1.0 / (4.0 * (alpha * alpha + 1.0)), std::nullopt);
  p.alpha_ = alpha;
  p.beta_sq_ = 4.0 * (alpha * alpha + 1.0);
  p.beta_ = std::sqrt(p.beta_sq_);
  return p;
}

cplx ModuliParams::lambda_phase() const { return exact_ ? unit(*exact_) : unit(theta_); }

Commutation ModuliParams::d_commutation() const {
  return exact_ ? Commutation::exact(*exact_) : Commutation::real(theta_);
}

Commutation ModuliParams::dperp_commutation() const {
  return exact_ ? Commutation::exact(exact_->reciprocal()) : Commutation::real(1.0 / theta_);
}

// ---------------------------------------------------------------------------

GaussThetaFn GaussThetaFn::gaussian_theta(double alpha, double r, double gamma) {
  if (!(alpha > 0.0)) throw std::domain_error("Gaussian-Theta function needs alpha > 0");
  // a_p is symmetric about p = 1/2 with peak value 1 at p = 0, 1.
  int P = 1;
  while (-pi * alpha * P * (P - 1.0) > std::log(1e-18)) ++P;
  auto coefficient = [alpha](double p) { return std::exp(-pi * alpha * p * p + pi * alpha * p); };
  auto tail = [&](int P) {
    const double first = coefficient(P + 1.0);
    const double ratio = std::exp(-2.0 * pi * alpha * (P + 1.0));
    return 2.0 * first / (1.0 - ratio);
  };
  while (tail(P) > 1e-16) ++P;

  GaussThetaFn f;
  f.alpha = alpha;
  f.r = r;
  f.gamma = gamma;
  f.p_min = 1 - P;
  for (int p = 1 - P; p <= P; ++p) f.coeffs.emplace_back(coefficient(p));
  f.dropped_mass = tail(P);
  return f;
}

GaussThetaFn GaussThetaFn::pure_gaussian(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("Gaussian needs alpha > 0");
  GaussThetaFn f;
  f.alpha = alpha;
  f.coeffs = {1.0};
  return f;
}

cplx GaussThetaFn::a(int p) const {
  if (p < p_min || p > p_max()) return {};
  return coeffs[static_cast<std::size_t>(p - p_min)];
}

double GaussThetaFn::coefficient_l1() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::abs(c);
  return s;
}

cplx GaussThetaFn::eval(double x) const {
  const double envelope = std::exp(-pi * alpha * x * x);
  if (envelope == 0.0) return {};
  const cplx step = unit(r * x);
  cplx w = unit((r * p_min - gamma) * x);
  cplx sum{};
  for (const auto& c : coeffs) {
    sum += c * w;
    w *= step;
  }
  return envelope * sum;
}

cplx GaussThetaFn::eval_hat(double s) const {
  cplx sum{};
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double d = s - r * (p_min + static_cast<double>(k)) + gamma;
    sum += coeffs[k] * std::exp(-pi * d * d / alpha);
  }
  return sum / std::sqrt(alpha);
}

// ---------------------------------------------------------------------------

SchwartzFn::SchwartzFn(GaussThetaFn leaf) : node_(std::make_shared<Node>(Node{Leaf{std::move(leaf)}})) {}

SchwartzFn SchwartzFn::hat_of(GaussThetaFn leaf) {
  return SchwartzFn(std::make_shared<Node>(Node{LeafHat{std::move(leaf)}}));
}

SchwartzFn SchwartzFn::superpose(SchwartzFn child, std::vector<Translate> terms) {
  return SchwartzFn(std::make_shared<Node>(Node{Superpose{std::move(child.node_), std::move(terms)}}));
}

SchwartzFn operator+(const SchwartzFn& a, const SchwartzFn& b) {
  return SchwartzFn(std::make_shared<SchwartzFn::Node>(SchwartzFn::Node{SchwartzFn::Sum{{a.node_, b.node_}}}));
}

SchwartzFn operator*(cplx c, const SchwartzFn& f) {
  return SchwartzFn(std::make_shared<SchwartzFn::Node>(SchwartzFn::Node{SchwartzFn::Scale{c, f.node_}}));
}

SchwartzFn SchwartzFn::reflect() const { return SchwartzFn(std::make_shared<Node>(Node{Reflect{node_}})); }

cplx SchwartzFn::eval(double x) const { return eval_node(*node_, x); }

cplx SchwartzFn::eval_node(const Node& n, double x) {
  return std::visit(
      [x](const auto& v) -> cplx {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          return v.g.eval(x);
        } else if constexpr (std::is_same_v<T, LeafHat>) {
          return v.g.eval_hat(x);
        } else if constexpr (std::is_same_v<T, Reflect>) {
          return eval_node(*v.child, -x);
        } else if constexpr (std::is_same_v<T, Scale>) {
          return v.c * eval_node(*v.child, x);
        } else if constexpr (std::is_same_v<T, Sum>) {
          cplx s{};
          for (const auto& c : v.children) s += eval_node(*c, x);
          return s;
        } else {
          cplx s{};
          for (const auto& t : v.terms) {
            cplx mod{};
            for (const auto& [freq, c] : t.modulations) mod += c * unit(freq * x);
            if (mod == cplx{}) continue;
            s += mod * eval_node(*v.child, x + t.shift);
          }
          return s;
        }
      },
      n.v);
}

double SchwartzFn::sup_bound() const { return sup_node(*node_); }

double SchwartzFn::sup_node(const Node& n) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          return v.g.coefficient_l1() + v.g.dropped_mass;
        } else if constexpr (std::is_same_v<T, LeafHat>) {
          return (v.g.coefficient_l1() + v.g.dropped_mass) / std::sqrt(v.g.alpha);
        } else if constexpr (std::is_same_v<T, Reflect>) {
          return sup_node(*v.child);
        } else if constexpr (std::is_same_v<T, Scale>) {
          return std::abs(v.c) * sup_node(*v.child);
        } else if constexpr (std::is_same_v<T, Sum>) {
          double s = 0.0;
          for (const auto& c : v.children) s += sup_node(*c);
          return s;
        } else {
          double mass = 0.0;
          for (const auto& t : v.terms)
            for (const auto& m : t.modulations) mass += std::abs(m.second);
          return mass * sup_node(*v.child);
        }
      },
      n.v);
}

double SchwartzFn::decay_radius(double eps) const { return decay_node(*node_, eps); }

double SchwartzFn::decay_node(const Node& n, double eps) {
  return std::visit(
      [eps](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          const double S = v.g.coefficient_l1();
          if (S <= eps) return 0.0;
          return std::sqrt(std::log(S / eps) / (pi * v.g.alpha));
        } else if constexpr (std::is_same_v<T, LeafHat>) {
          const double S = v.g.coefficient_l1() / std::sqrt(v.g.alpha);
          if (S <= eps) return 0.0;
          double centre = 0.0;
          for (int p = v.g.p_min; p <= v.g.p_max(); ++p)
            centre = std::max(centre, std::abs(v.g.r * p - v.g.gamma));
          return centre + std::sqrt(std::log(S / eps) * v.g.alpha / pi);
        } else if constexpr (std::is_same_v<T, Reflect>) {
          return decay_node(*v.child, eps);
        } else if constexpr (std::is_same_v<T, Scale>) {
          const double c = std::abs(v.c);
          return c == 0.0 ? 0.0 : decay_node(*v.child, eps / c);
        } else if constexpr (std::is_same_v<T, Sum>) {
          double r = 0.0;
          const double share = eps / static_cast<double>(std::max<std::size_t>(1, v.children.size()));
          for (const auto& c : v.children) r = std::max(r, decay_node(*c, share));
          return r;
        } else {
          // Each translate gets an equal share of eps, scaled by its own mass.
          const double share = eps / static_cast<double>(std::max<std::size_t>(1, v.terms.size()));
          double reach = 0.0;
          for (const auto& t : v.terms) {
            double mass = 0.0;
            for (const auto& m : t.modulations) mass += std::abs(m.second);
            if (mass == 0.0) continue;
            reach = std::max(reach, std::abs(t.shift) + decay_node(*v.child, share / mass));
          }
          return reach;
        }
      },
      n.v);
}

std::shared_ptr<const SchwartzFn::Node> SchwartzFn::fourier_node(const std::shared_ptr<const Node>& n) {
  return std::visit(
      [&n](const auto& v) -> std::shared_ptr<const Node> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          return std::make_shared<Node>(Node{LeafHat{v.g}});
        } else if constexpr (std::is_same_v<T, LeafHat>) {
          auto leaf = std::make_shared<Node>(Node{Leaf{v.g}});
          return std::make_shared<Node>(Node{Reflect{leaf}});
        } else if constexpr (std::is_same_v<T, Reflect>) {
          return std::make_shared<Node>(Node{Reflect{fourier_node(v.child)}});
        } else if constexpr (std::is_same_v<T, Scale>) {
          return std::make_shared<Node>(Node{Scale{v.c, fourier_node(v.child)}});
        } else if constexpr (std::is_same_v<T, Sum>) {
          Sum s;
          for (const auto& c : v.children) s.children.push_back(fourier_node(c));
          return std::make_shared<Node>(Node{std::move(s)});
        } else {
          // F(pi_(a,s) f) = e(-a s) pi_(-s,a) F(f).
          std::map<double, std::vector<std::pair<double, cplx>>> grouped;
          for (const auto& t : v.terms)
            for (const auto& [freq, c] : t.modulations)
              grouped[-freq].emplace_back(t.shift, c * unit(-t.shift * freq));
          std::vector<Translate> terms;
          for (auto& [shift, mods] : grouped) terms.push_back({shift, std::move(mods)});
          (void)n;
          return std::make_shared<Node>(Node{Superpose{fourier_node(v.child), std::move(terms)}});
        }
      },
      n->v);
}

SchwartzFn fourier_transform(const SchwartzFn& f) { return SchwartzFn(SchwartzFn::fourier_node(f.node_)); }

SchwartzFn heisenberg_act(double a, double s, const SchwartzFn& f) {
  return SchwartzFn::superpose(f, {{a, {{s, cplx{1.0}}}}});
}

SchwartzFn right_action(const SchwartzFn& f, const TorusElement& b, const ModuliParams& params) {
  if (!(b.commutation() == params.dperp_commutation()))
    throw std::domain_error("right action needs an element of the complementary-lattice algebra");
  const double beta = params.beta();
  const Commutation k = b.commutation();
  std::map<int, std::vector<std::pair<double, cplx>>> by_n;
  b.for_each([&](int m, int n, const cplx& c) {
    by_n[n].emplace_back(-m * beta, c * k.phase(static_cast<std::int64_t>(m) * n));
  });
  std::vector<SchwartzFn::Translate> terms;
  for (auto& [n, mods] : by_n) terms.push_back({-n * beta, std::move(mods)});
  return SchwartzFn::superpose(f, std::move(terms));
}

SchwartzFn left_action(const TorusElement& a, const SchwartzFn& f, const ModuliParams& params) {
  const Commutation c = params.d_commutation();
  if (!(a.commutation() == c)) throw std::domain_error("left action needs an element of the D-lattice algebra");
  const double step = params.d_spacing();
  std::map<int, std::vector<std::pair<double, cplx>>> by_m;
  a.for_each([&](int m, int n, const cplx& v) {
    by_m[m].emplace_back(n * step, v * c.phase(static_cast<std::int64_t>(m) * n));
  });
  std::vector<SchwartzFn::Translate> terms;
  for (auto& [m, mods] : by_m) terms.push_back({m * step, std::move(mods)});
  return SchwartzFn::superpose(f, std::move(terms));
}

HFunction build_h_with_gamma(const ModuliParams& params, double gamma) {
  const double r = params.beta() / 2.0;
  GaussThetaFn g = GaussThetaFn::gaussian_theta(params.alpha(), r, gamma);
  GaussThetaFn gr = GaussThetaFn::gaussian_theta(params.alpha(), -r, -gamma);
  SchwartzFn h = SchwartzFn(g) + SchwartzFn(gr);
  return {std::move(g), std::move(gr), std::move(h)};
}

HFunction build_h(const ModuliParams& params) { return build_h_with_gamma(params, params.beta() / 4.0); }

}  // namespace rotalg
