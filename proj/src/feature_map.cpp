#include "qgenome/feature_map.hpp"

#include <stdexcept>

namespace qgenome {

void FeatureMapConfig::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("feature map qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("feature map repetitions must be >= 1");
    }
}

std::string to_string(FeatureMapKind kind) {
    switch (kind) {
        case FeatureMapKind::Z: return "Z";
        case FeatureMapKind::ZZ: return "ZZ";
        case FeatureMapKind::Pauli: return "PAULI";
    }
    return "?";
}

FeatureMapKind parse_feature_map_kind(const std::string &name) {
    if (name == "Z" || name == "ZFeatureMap") {
        return FeatureMapKind::Z;
    }
    if (name == "ZZ" || name == "ZZFeatureMap") {
        return FeatureMapKind::ZZ;
    }
    if (name == "PAULI" || name == "Pauli" || name == "PauliFeatureMap") {
        return FeatureMapKind::Pauli;
    }
    throw std::invalid_argument("unknown feature map kind '" + name + "' (expected Z, ZZ or PAULI)");
}

std::string display_name(FeatureMapKind kind) {
    switch (kind) {
        case FeatureMapKind::Z: return "ZFeatureMap";
        case FeatureMapKind::ZZ: return "ZZFeatureMap";
        case FeatureMapKind::Pauli: return "PauliFeatureMap";
    }
    return "?";
}

std::string to_string(Entanglement entanglement) {
    return entanglement == Entanglement::FullPairs ? "full" : "linear";
}

Entanglement parse_entanglement(const std::string &name) {
    if (name == "full" || name == "FULL_PAIRS") {
        return Entanglement::FullPairs;
    }
    if (name == "linear" || name == "LINEAR") {
        return Entanglement::Linear;
    }
    throw std::invalid_argument("unknown entanglement '" + name + "' (expected full or linear)");
}

std::vector<std::pair<int, int>> entangling_pairs(int n_qubits, Entanglement entanglement) {
    std::vector<std::pair<int, int>> pairs;
    for (int j = 0; j < n_qubits; ++j) {
        if (entanglement == Entanglement::Linear) {
            if (j + 1 < n_qubits) {
                pairs.emplace_back(j, j + 1);
            }
            continue;
        }
        for (int k = j + 1; k < n_qubits; ++k) {
            pairs.emplace_back(j, k);
        }
    }
    return pairs;
}

}  // namespace qgenome
