#pragma once

#include <optional>
#include <vector>

#include "cwom/core/coupling.hpp"
#include "cwom/core/field.hpp"

namespace cwom {

/// An envelope with its carrier: lab value = env * exp(i (k x - omega t)).
struct Wave {
  ComplexField env;
  Carrier carrier;
};

/// Independent field/conjugate-partner arguments for the interaction.
///
/// For mean-field evolution `abar` and `bbar` are the complex conjugates of
/// `a` and `b`; the linearized (doubled) system treats them as independent.
struct PolarizedArgs {
  std::vector<Wave> a;
  std::vector<Wave> abar;
  Wave b;
  Wave bbar;
};

PolarizedArgs polarize(const FieldState& s);

/// Photon-channel contribution d a_j / dt for every branch, bilinear in the
/// photon arguments and the displacement parts (b, bbar).
///
/// With `conjugate` set, returns the conjugate-partner channel d abar_j / dt
/// evaluated from `photon` = abar arguments (couplings conjugated).
/// `targets` are the carriers of the branches being updated.
std::vector<ComplexField> photon_channel(const std::vector<Wave>& photon, const Wave& b,
                                         const Wave& bbar, const std::vector<Carrier>& targets,
                                         const InteractionModel& model, const Grid1D& grid,
                                         double time, bool conjugate);

/// The real phonon source S = delta(int h dx)/delta u, bilinear in (a, abar),
/// projected onto `target`. d b/dt = i S(q), d bbar/dt = -i S(-q).
ComplexField phonon_source(const std::vector<Wave>& a, const std::vector<Wave>& abar,
                           const Carrier& target, const InteractionModel& model,
                           const Grid1D& grid, double time);

/// Interaction-only time derivatives of all fields (mean-field).
FieldDerivatives interaction_rhs(const FieldState& state, const InteractionModel& model);
FieldDerivatives interaction_rhs(const FieldState& state, const CouplingSet& couplings);

/// Real part of int h dx where the interaction Hamiltonian is -hbar int h dx.
double interaction_integral(const FieldState& state, const InteractionModel& model);

/// Whether a term with residual carrier `delta` is kept by the model.
/// Throws if the residual wavenumber is representable but not on the grid.
bool keeps_residual(const Carrier& delta, const InteractionModel& model, const Grid1D& grid);

}  // namespace cwom
