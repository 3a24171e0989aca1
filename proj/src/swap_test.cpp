// Copyright 2026 The qae-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qae/swap_test.hpp"

#include <stdexcept>
#include <variant>

#include "qae/kernels.hpp"

namespace qae {
namespace {

struct GateOp {
  const UnitaryMatrix* u;
  QubitList targets;
};
struct ResetOp {
  QubitList qubits;
};
using Op = std::variant<GateOp, ResetOp>;

std::vector<Op> build_circuit(const CompiledQae& net, const CircuitLayout& layout, const UnitaryMatrix& h,
                              const UnitaryMatrix& cswap) {
  std::vector<Op> ops;
  const Topology& t = net.topology();
  std::size_t s = 0;
  for (int i = 0; i + 1 < t.n_layers(); ++i) {
    const QubitList& in = layout.layers[static_cast<std::size_t>(i)];
    const QubitList& out = layout.layers[static_cast<std::size_t>(i) + 1];
    for (int j = 0; j < t.layer(i + 1); ++j, ++s) {
      QubitList targets = in;
      targets.push_back(out[static_cast<std::size_t>(j)]);
      ops.push_back(GateOp{&net.unitary(s), std::move(targets)});
    }
    ops.push_back(ResetOp{in});
  }
  ops.push_back(GateOp{&h, {layout.ancilla}});
  const QubitList& output = layout.layers.back();
  for (std::size_t k = 0; k < layout.reference.size(); ++k) {
    ops.push_back(GateOp{&cswap, {layout.ancilla, layout.reference[k], output[k]}});
  }
  ops.push_back(GateOp{&h, {layout.ancilla}});
  return ops;
}

StateVector initial_state(const CircuitLayout& layout, const StateVector& input, const StateVector& target) {
  const int rest = layout.n_qubits - 1 - target.n_qubits() - input.n_qubits();
  return tensor(tensor(tensor(StateVector::zero(1), target), input), StateVector::zero(rest));
}

double p0_exact(const std::vector<Op>& ops, const CircuitLayout& layout, const StateVector& init) {
  const int n = layout.n_qubits;
  CMatrix rho = init.amplitudes() * init.amplitudes().adjoint();
  for (const Op& op : ops) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      kernels::apply_unitary(rho, n, g->u->matrix(), g->targets);
    } else {
      rho = kernels::reset(rho, n, std::get<ResetOp>(op).qubits);
    }
  }
  const std::size_t anc_bit = std::size_t{1} << (n - 1 - layout.ancilla);
  double p0 = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    if ((static_cast<std::size_t>(i) & anc_bit) == 0) p0 += rho(i, i).real();
  }
  return p0;
}

int run_shot(const std::vector<Op>& ops, const CircuitLayout& layout, const StateVector& init, Rng& rng) {
  const UnitaryMatrix x = gates::X();
  StateVector psi = init;
  for (const Op& op : ops) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      CVector amps = psi.amplitudes();
      kernels::apply_unitary(amps, layout.n_qubits, g->u->matrix(), g->targets);
      psi = StateVector(layout.n_qubits, std::move(amps));
    } else {
      for (int q : std::get<ResetOp>(op).qubits) {
        auto meas = measure_qubit(psi, q, rng);
        psi = meas.bit == 1 ? apply_unitary(meas.state, x, {q}) : std::move(meas.state);
      }
    }
  }
  return measure_qubit(psi, layout.ancilla, rng).bit;
}

}  // namespace

CircuitLayout::CircuitLayout(const Topology& topology)
    : n_qubits(topology.circuit_qubits()), ancilla(0) {
  const int m1 = topology.input_size();
  const int w = topology.width();
  for (int k = 0; k < m1; ++k) reference.push_back(1 + k);
  const int base = 1 + m1;
  int start = 0;
  for (int i = 0; i < topology.n_layers(); ++i) {
    QubitList layer;
    for (int k = 0; k < topology.layer(i); ++k) layer.push_back(base + (start + k) % w);
    layers.push_back(std::move(layer));
    start = (start + topology.layer(i)) % w;
  }
}

SwapTestResult swap_test(const QaeModel& model, const StateVector& input, const StateVector& target, Shots shots,
                         Rng& rng) {
  const Topology& t = model.topology;
  if (t.output_size() != t.input_size() || target.n_qubits() != t.output_size()) {
    throw std::invalid_argument("swap test compares an " + std::to_string(t.output_size()) +
                                "-qubit output with a " + std::to_string(target.n_qubits()) + "-qubit target");
  }
  if (input.n_qubits() != t.input_size()) throw std::invalid_argument("swap test input size mismatch");
  if (shots && *shots < 1) throw std::invalid_argument("swap test needs at least one shot");

  const CompiledQae net(model);
  const CircuitLayout layout(t);
  const UnitaryMatrix h = gates::H();
  const UnitaryMatrix cswap = gates::CSWAP();
  const auto ops = build_circuit(net, layout, h, cswap);
  const StateVector init = initial_state(layout, input, target);

  SwapTestResult result{};
  if (!shots) {
    result.p0 = p0_exact(ops, layout, init);
  } else {
    for (int s = 0; s < *shots; ++s) {
      if (run_shot(ops, layout, init, rng) == 0) ++result.zeros;
    }
    result.shots = *shots;
    result.p0 = static_cast<double>(result.zeros) / static_cast<double>(*shots);
  }
  result.fidelity = 2.0 * result.p0 - 1.0;
  return result;
}

double swap_test_fidelity(const QaeModel& model, const StateVector& input, const StateVector& target, Shots shots,
                          Rng& rng) {
  return swap_test(model, input, target, shots, rng).fidelity;
}

}  // namespace qae
