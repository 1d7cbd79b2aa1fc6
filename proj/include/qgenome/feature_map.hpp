#pragma once

// Data-encoding circuits U(x) for the Z, ZZ and Pauli feature maps.
//
// Feature values are used as rotation angles directly (full-angle
// convention, exp(-i x P)); scaling into a sensible angle range happens in
// the data pipeline.

#include "qgenome/statevector.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace qgenome {

enum class FeatureMapKind { Z, ZZ, Pauli };

enum class Entanglement { FullPairs, Linear };

struct FeatureMapConfig {
    FeatureMapKind kind = FeatureMapKind::Z;
    int n_qubits = 4;
    int repetitions = 1;
    Entanglement entanglement = Entanglement::FullPairs;
    // off reproduces the bare rotation products, which act on |0...0> as a global phase for Z and ZZ
    bool hadamard_layer = true;

    void validate() const;

    friend bool operator==(const FeatureMapConfig &, const FeatureMapConfig &) = default;
};

// "Z", "ZZ", "PAULI"
std::string to_string(FeatureMapKind kind);
FeatureMapKind parse_feature_map_kind(const std::string &name);
// the names used in result tables: ZFeatureMap, ZZFeatureMap, PauliFeatureMap
std::string display_name(FeatureMapKind kind);
std::string to_string(Entanglement entanglement);
Entanglement parse_entanglement(const std::string &name);

// (j, k) with j < k: every pair for FullPairs, neighbours for Linear
std::vector<std::pair<int, int>> entangling_pairs(int n_qubits, Entanglement entanglement);

template <typename Derived>
[[nodiscard]] BasicCircuit<typename Derived::Scalar> build_feature_map(const FeatureMapConfig &config, const Eigen::MatrixBase<Derived> &x) {
    using Scalar = typename Derived::Scalar;
    using G = BasicGate<Scalar>;
    config.validate();
    if (x.size() != config.n_qubits) {
        throw std::invalid_argument("feature vector has " + std::to_string(x.size()) + " entries, feature map expects " + std::to_string(config.n_qubits));
    }
    if (!x.allFinite()) {
        throw std::invalid_argument("non-finite feature value");
    }
    const int n = config.n_qubits;
    const auto pairs = entangling_pairs(n, config.entanglement);
    BasicCircuit<Scalar> circuit(n);
    for (int rep = 0; rep < config.repetitions; ++rep) {
        if (config.hadamard_layer) {
            for (int q = 0; q < n; ++q) {
                circuit.append(G::h(q));
            }
        }
        switch (config.kind) {
            case FeatureMapKind::Z:
                for (int q = 0; q < n; ++q) {
                    circuit.append(G::rz(q, x(q)));
                }
                break;
            case FeatureMapKind::ZZ:
                for (int q = 0; q < n; ++q) {
                    circuit.append(G::rz(q, x(q)));
                }
                for (const auto &[j, k] : pairs) {
                    circuit.append(G::rzz(j, k, x(j) * x(k)));
                }
                break;
            case FeatureMapKind::Pauli:
                for (int q = 0; q < n; ++q) {
                    circuit.append(G::rx(q, x(q)));
                    circuit.append(G::ry(q, x(q)));
                    circuit.append(G::rz(q, x(q)));
                }
                for (const auto &[j, k] : pairs) {
                    circuit.append(G::rzx(j, k, x(j) * x(k)));
                }
                break;
        }
    }
    return circuit;
}

// |phi(x)> = U(x)|0...0>
template <typename Derived>
[[nodiscard]] BasicStatevector<typename Derived::Scalar> encode(const FeatureMapConfig &config, const Eigen::MatrixBase<Derived> &x) {
    using Scalar = typename Derived::Scalar;
    return run_circuit(build_feature_map(config, x), BasicStatevector<Scalar>::zero(config.n_qubits));
}

}  // namespace qgenome
