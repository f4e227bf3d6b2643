#pragma once

#include <array>
#include <vector>

#include "dpt/lattice.hpp"
#include "dpt/mech.hpp"

// Built-in device data: the eight-beam bank, the catalogued disorder
// realizations, and the electrostatic drive presets used to program the
// couplings, plus the voltage -> coupling calibration derived from them.

namespace dpt::data {

// Eight doubly clamped beams (resonance in kHz, quality factor), mass 1 kg
// by convention so displacements carry the zero-point scale directly.
OscillatorBank beams8();

// Device couplings are quoted as resonant peak splittings: two oscillators
// coupled with hopping J show normal modes split by 2J, and the splitting
// is what a response measurement reads off.  Hamiltonians take hoppings.
double hopping_from_splitting(double splitting_hz);

// Measured device coupling presets, peak-splitting Hz: alternating (20, 60)
// starting weak for the topological chain, (60, 20) starting strong for
// the trivial one.
std::array<double, 7> coupling_targets(Winding phase);

// The same presets as tight-binding hoppings (half the splitting).
std::array<double, 7> hopping_targets(Winding phase);

// AC drive amplitudes (volts) that realized coupling_targets() on the
// device, split by which electrode circuit addresses the bond.  Bonds are
// 1-indexed in the lab notation; index 0 here is the leftmost bond.
struct VoltageSet {
  std::array<double, 7> odd_circuit;   // drive applied on the odd side
  std::array<double, 7> even_circuit;  // drive applied on the even side
};
VoltageSet drive_voltages(Winding phase);

// Least-squares slope through the origin over all 28 (V_AC, splitting)
// preset points, with the nominal DC bias.  splitting [Hz] = slope * V_AC;
// halve the result for the hopping.
CalibrationModel default_calibration();

// Fifteen archived disorder draws: five each at strength 5, 10 and 15 Hz,
// in device peak-splitting units.  Deltas are the realized per-bond
// offsets for a 7-bond chain.
std::vector<DisorderSpec> disorder_table();

// Converts a device-unit draw (splitting offsets) to hopping units.
DisorderSpec hopping_disorder(const DisorderSpec& device_row);

}  // namespace dpt::data
