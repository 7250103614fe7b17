#pragma once

#include <map>
#include <optional>
#include <string>

#include "lrergo/operator_algebra.hpp"

namespace lrergo {

// Finite family of self-adjoint local terms keyed by their support, plus the
// decay rate lambda used by the weighted interaction norm.
struct Interaction {
  std::map<Region, LocalOperator> terms;
  double lambda = 0.6931471805599453;  // ln 2 unless configured otherwise
  std::string name = "custom";
  bool translation_covariant = false;

  // Accumulates into an existing term with the same support (periodic wrap can
  // route two generated terms onto one region, e.g. the two-site ring bond).
  void add_term(const LocalOperator& op);
};

enum class PresetKind { ising, transverse_ising, tilted_ising, heisenberg, xy, custom };

struct ModelPreset {
  PresetKind kind = PresetKind::custom;
  double J = 1.0;
  double hx = 0.0;
  double hz = 0.0;
};

PresetKind preset_from_name(const std::string& name);
std::string preset_name(PresetKind kind);

// Materializes the preset's terms on the torus: nearest-neighbor bonds along
// each axis (wrapped when periodic) plus on-site fields.
Interaction build_preset(const ModelPreset& preset, const Torus& t, double lambda);

// sup over sites n of sum_{X owning n} ||Phi(X)|| |X| N^(2|X|) e^(lambda diam X),
// with the wrapped diameter on a periodic torus. When the interaction is
// flagged translation-covariant the per-site sums are asserted equal (1e-12).
double interaction_norm(const Interaction& phi, const Torus& t);

double lr_velocity(const Interaction& phi, const Torus& t);  // 2 * norm / lambda

// H_Lambda = sum of terms with support inside Lambda (defaults to the full
// box). Periodic wrapped terms are already present in the term map.
LocalOperator hamiltonian(const Interaction& phi, const Torus& t,
                          const std::optional<Region>& subvolume = std::nullopt);

// Commutator-bound right-hand side, evaluated exactly as written:
// 4 ||A|| ||B|| |suppA| |suppB| N^(2|suppA|) exp(-lambda (dist - v |t|)).
double lr_bound_rhs(double norm_a, double norm_b, std::size_t supp_a, std::size_t supp_b,
                    int site_dim, double lambda, double distance, double velocity, double t);

}  // namespace lrergo
