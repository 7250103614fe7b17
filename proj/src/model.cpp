#include "lrergo/model.hpp"

#include <cmath>
#include <stdexcept>

#include "lrergo/pauli_string.hpp"

namespace lrergo {

void Interaction::add_term(const LocalOperator& op) {
  auto it = terms.find(op.support);
  if (it == terms.end())
    terms.emplace(op.support, op);
  else
    it->second = add(it->second, op);
}

PresetKind preset_from_name(const std::string& name) {
  if (name == "ising") return PresetKind::ising;
  if (name == "transverse_ising") return PresetKind::transverse_ising;
  if (name == "tilted_ising") return PresetKind::tilted_ising;
  if (name == "heisenberg") return PresetKind::heisenberg;
  if (name == "xy") return PresetKind::xy;
  if (name == "custom") return PresetKind::custom;
  throw config_error("unknown model preset '" + name + "'");
}

std::string preset_name(PresetKind kind) {
  switch (kind) {
    case PresetKind::ising: return "ising";
    case PresetKind::transverse_ising: return "transverse_ising";
    case PresetKind::tilted_ising: return "tilted_ising";
    case PresetKind::heisenberg: return "heisenberg";
    case PresetKind::xy: return "xy";
    case PresetKind::custom: return "custom";
  }
  return "custom";
}

namespace {

LocalOperator one_site(char letter, const Site& s) {
  PauliString ps;
  ps.factors.emplace_back(s, pauli_matrix(letter));
  return ps.to_operator();
}

LocalOperator two_site(char l1, const Site& s1, char l2, const Site& s2) {
  PauliString ps;
  ps.factors.emplace_back(s1, pauli_matrix(l1));
  ps.factors.emplace_back(s2, pauli_matrix(l2));
  return ps.to_operator();
}

}  // namespace

Interaction build_preset(const ModelPreset& preset, const Torus& t, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("build_preset: lambda must be positive");
  Interaction phi;
  phi.lambda = lambda;
  phi.name = preset_name(preset.kind);
  phi.translation_covariant = (t.boundary == Boundary::periodic);
  if (preset.kind == PresetKind::custom)
    throw std::invalid_argument("build_preset: custom interactions are assembled from explicit terms");

  const Region box = t.all_sites();
  const bool wrap = t.boundary == Boundary::periodic;

  for (const Site& s : box.sites()) {
    // On-site fields.
    double hx = preset.hx, hz = preset.hz;
    bool has_field = false;
    LocalOperator field = LocalOperator::zero(Region({s}), 2);
    if ((preset.kind == PresetKind::transverse_ising || preset.kind == PresetKind::tilted_ising) &&
        hx != 0) {
      field = add(field, scale(-hx, one_site('X', s)));
      has_field = true;
    }
    if ((preset.kind == PresetKind::ising || preset.kind == PresetKind::tilted_ising) && hz != 0) {
      field = add(field, scale(-hz, one_site('Z', s)));
      has_field = true;
    }
    if (has_field) phi.add_term(field);

    // Nearest-neighbor bonds along each positive axis direction.
    for (int d = 0; d < t.dim(); ++d) {
      Site nb = s;
      nb[d] += 1;
      if (wrap)
        nb = t.wrap(nb);
      else if (!t.in_box(nb))
        continue;
      if (nb == s) continue;  // extent 1 along this axis
      switch (preset.kind) {
        case PresetKind::ising:
        case PresetKind::transverse_ising:
        case PresetKind::tilted_ising:
          if (preset.J != 0) phi.add_term(scale(-preset.J, two_site('Z', s, 'Z', nb)));
          break;
        case PresetKind::heisenberg:
          if (preset.J != 0)
            phi.add_term(scale(preset.J, add(add(two_site('X', s, 'X', nb), two_site('Y', s, 'Y', nb)),
                                             two_site('Z', s, 'Z', nb))));
          break;
        case PresetKind::xy:
          if (preset.J != 0)
            phi.add_term(scale(preset.J, add(two_site('X', s, 'X', nb), two_site('Y', s, 'Y', nb))));
          break;
        case PresetKind::custom:
          break;
      }
    }
  }

  for (const auto& [region, op] : phi.terms)
    if (hermiticity_defect(op.mat) > 1e-12)
      throw std::invalid_argument("build_preset: non-self-adjoint term generated");
  return phi;
}

double interaction_norm(const Interaction& phi, const Torus& t) {
  if (!(phi.lambda > 0)) throw std::invalid_argument("interaction_norm: lambda must be positive");
  const Region box = t.all_sites();

  // Cache per-term weights ||Phi(X)|| |X| N^(2|X|) e^(lambda diam X).
  std::vector<std::pair<const Region*, double>> weighted;
  weighted.reserve(phi.terms.size());
  for (const auto& [region, op] : phi.terms) {
    if (hermiticity_defect(op.mat) > 1e-12)
      throw std::invalid_argument("interaction_norm: term on " + std::to_string(region.size()) +
                                  " sites is not self-adjoint");
    double w = operator_norm(op) * static_cast<double>(region.size()) *
               std::pow(static_cast<double>(op.site_dim), 2.0 * static_cast<double>(region.size())) *
               std::exp(phi.lambda * static_cast<double>(diam(region, t)));
    weighted.emplace_back(&region, w);
  }

  double best = 0.0;
  std::vector<double> per_site;
  per_site.reserve(box.size());
  for (const Site& n : box.sites()) {
    double sum = 0.0;
    for (const auto& [region, w] : weighted)
      if (region->contains(n)) sum += w;
    per_site.push_back(sum);
    best = std::max(best, sum);
  }
  if (phi.translation_covariant) {
    for (double s : per_site)
      if (std::abs(s - best) > 1e-12 * std::max(1.0, best))
        throw std::logic_error("interaction_norm: translation-covariant flag set but per-site sums differ");
  }
  return best;
}

double lr_velocity(const Interaction& phi, const Torus& t) {
  return 2.0 * interaction_norm(phi, t) / phi.lambda;
}

LocalOperator hamiltonian(const Interaction& phi, const Torus& t,
                          const std::optional<Region>& subvolume) {
  const Region lam = subvolume.value_or(t.all_sites());
  if (!t.all_sites().contains(lam))
    throw std::invalid_argument("hamiltonian: subvolume leaves the torus box");
  int site_dim = phi.terms.empty() ? 2 : phi.terms.begin()->second.site_dim;
  LocalOperator h = LocalOperator::zero(lam, site_dim);
  for (const auto& [region, op] : phi.terms) {
    if (!lam.contains(region)) continue;
    h = add(h, embed(op, lam));
  }
  return h;
}

double lr_bound_rhs(double norm_a, double norm_b, std::size_t supp_a, std::size_t supp_b,
                    int site_dim, double lambda, double distance, double velocity, double t) {
  return 4.0 * norm_a * norm_b * static_cast<double>(supp_a) * static_cast<double>(supp_b) *
         std::pow(static_cast<double>(site_dim), 2.0 * static_cast<double>(supp_a)) *
         std::exp(-lambda * (distance - velocity * std::abs(t)));
}

}  // namespace lrergo
