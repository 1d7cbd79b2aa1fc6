#pragma once

// Dense pure-state simulation of small circuits.
//
// Basis ordering is little-endian: qubit q is bit q of the amplitude index.
// Two-qubit gates act on the local basis |a b> where a = qubits[0] is the
// high bit, so CNOT(control, target) and Z_a X_b read like their textbook
// Kronecker forms.

#include <Eigen/Core>

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgenome {

inline constexpr int kMaxQubits = 12;

enum class GateKind { H, RX, RY, RZ, CNOT, CZ, RZZ, RZX };

// Full: exp(-i angle P), the encoding form. Half: exp(-i angle P / 2), the
// trainable form for which the +-pi/2 parameter shift is exact.
enum class AngleConvention { Full, Half };

inline const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::RZZ: return "RZZ";
        case GateKind::RZX: return "RZX";
    }
    return "?";
}

template <typename Scalar>
struct BasicGate {
    using Complex = std::complex<Scalar>;
    using LocalMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

    GateKind kind = GateKind::H;
    std::array<int, 2> qubits{ 0, -1 };
    Scalar angle = Scalar(0);
    AngleConvention convention = AngleConvention::Full;

    static BasicGate h(int q) { return make(GateKind::H, { q, -1 }, Scalar(0), AngleConvention::Full); }
    static BasicGate rx(int q, Scalar theta, AngleConvention c = AngleConvention::Full) { return make(GateKind::RX, { q, -1 }, theta, c); }
    static BasicGate ry(int q, Scalar theta, AngleConvention c = AngleConvention::Full) { return make(GateKind::RY, { q, -1 }, theta, c); }
    static BasicGate rz(int q, Scalar theta, AngleConvention c = AngleConvention::Full) { return make(GateKind::RZ, { q, -1 }, theta, c); }
    static BasicGate cnot(int control, int target) { return make(GateKind::CNOT, { control, target }, Scalar(0), AngleConvention::Full); }
    static BasicGate cz(int a, int b) { return make(GateKind::CZ, { a, b }, Scalar(0), AngleConvention::Full); }
    static BasicGate rzz(int a, int b, Scalar theta, AngleConvention c = AngleConvention::Full) { return make(GateKind::RZZ, { a, b }, theta, c); }
    // exp(-i theta Z_a X_b) in the full convention
    static BasicGate rzx(int a, int b, Scalar theta, AngleConvention c = AngleConvention::Full) { return make(GateKind::RZX, { a, b }, theta, c); }

    [[nodiscard]] int arity() const { return qubits[1] < 0 ? 1 : 2; }

    [[nodiscard]] bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::RZZ || kind == GateKind::RZX;
    }

    // the phi in cos(phi) I - i sin(phi) P
    [[nodiscard]] Scalar rotation_half_width() const { return convention == AngleConvention::Full ? angle : angle / Scalar(2); }

    [[nodiscard]] BasicGate inverse() const {
        BasicGate g = *this;
        if (is_rotation()) {
            g.angle = -angle;
        }
        return g;
    }

    [[nodiscard]] BasicGate with_angle(Scalar theta) const {
        BasicGate g = *this;
        g.angle = theta;
        g.validate();
        return g;
    }

    void validate() const {
        if (!std::isfinite(static_cast<double>(angle))) {
            throw std::invalid_argument(std::string("non-finite angle for gate ") + gate_name(kind));
        }
        if (qubits[0] < 0 || (arity() == 2 && qubits[1] < 0)) {
            throw std::invalid_argument(std::string("negative qubit index for gate ") + gate_name(kind));
        }
        if (arity() == 2 && qubits[0] == qubits[1]) {
            throw std::invalid_argument(std::string("gate ") + gate_name(kind) + " needs two distinct qubits");
        }
    }

    void validate_for(int n_qubits) const {
        validate();
        for (int i = 0; i < arity(); ++i) {
            if (qubits[i] >= n_qubits) {
                throw std::out_of_range(std::string("gate ") + gate_name(kind) + " targets qubit " + std::to_string(qubits[i]) + " of a " + std::to_string(n_qubits) + "-qubit register");
            }
        }
    }

    // 2x2 or 4x4 unitary in the local basis described at the top of this file
    [[nodiscard]] LocalMatrix local_matrix() const {
        const Complex i1{ Scalar(0), Scalar(1) };
        const Scalar phi = rotation_half_width();
        const Scalar c = std::cos(phi);
        const Scalar s = std::sin(phi);
        const Complex mis = -i1 * s;
        switch (kind) {
            case GateKind::H: {
                const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
                LocalMatrix m(2, 2);
                m << r, r, r, -r;
                return m;
            }
            case GateKind::RX: {
                LocalMatrix m(2, 2);
                m << c, mis, mis, c;
                return m;
            }
            case GateKind::RY: {
                LocalMatrix m(2, 2);
                m << c, -s, s, c;
                return m;
            }
            case GateKind::RZ: {
                LocalMatrix m = LocalMatrix::Zero(2, 2);
                m(0, 0) = std::polar(Scalar(1), -phi);
                m(1, 1) = std::polar(Scalar(1), phi);
                return m;
            }
            case GateKind::CNOT: {
                LocalMatrix m = LocalMatrix::Zero(4, 4);
                m(0, 0) = m(1, 1) = Scalar(1);
                m(2, 3) = m(3, 2) = Scalar(1);
                return m;
            }
            case GateKind::CZ: {
                LocalMatrix m = LocalMatrix::Identity(4, 4);
                m(3, 3) = Scalar(-1);
                return m;
            }
            case GateKind::RZZ: {
                LocalMatrix m = LocalMatrix::Zero(4, 4);
                m(0, 0) = m(3, 3) = std::polar(Scalar(1), -phi);
                m(1, 1) = m(2, 2) = std::polar(Scalar(1), phi);
                return m;
            }
            case GateKind::RZX: {
                // cos(phi) I - i sin(phi) Z (x) X
                LocalMatrix m = LocalMatrix::Zero(4, 4);
                m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
                m(0, 1) = m(1, 0) = mis;
                m(2, 3) = m(3, 2) = -mis;
                return m;
            }
        }
        throw std::logic_error("unknown gate kind");
    }

private:
    static BasicGate make(GateKind kind, std::array<int, 2> qubits, Scalar angle, AngleConvention c) {
        BasicGate g;
        g.kind = kind;
        g.qubits = qubits;
        g.angle = angle;
        g.convention = c;
        g.validate();
        return g;
    }
};

template <typename Scalar>
class BasicCircuit {
public:
    using Gate = BasicGate<Scalar>;

    explicit BasicCircuit(int n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw std::invalid_argument("circuit qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
        }
    }

    BasicCircuit &append(const Gate &gate) {
        gate.validate_for(n_qubits_);
        gates_.push_back(gate);
        return *this;
    }

    BasicCircuit &append(const BasicCircuit &other) {
        if (other.n_qubits_ != n_qubits_) {
            throw std::invalid_argument("cannot compose circuits over different qubit counts");
        }
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        return *this;
    }

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

template <typename Scalar>
class BasicStatevector {
public:
    using Complex = std::complex<Scalar>;
    using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    // |0...0>
    static BasicStatevector zero(int n_qubits) { return basis(n_qubits, 0); }

    static BasicStatevector basis(int n_qubits, Eigen::Index index) {
        check_qubits(n_qubits);
        BasicStatevector s;
        s.n_qubits_ = n_qubits;
        s.amplitudes_ = Amplitudes::Zero(Eigen::Index{ 1 } << n_qubits);
        if (index < 0 || index >= s.amplitudes_.size()) {
            throw std::out_of_range("basis index out of range");
        }
        s.amplitudes_(index) = Scalar(1);
        return s;
    }

    // rejects vectors whose length is not 2^n or whose norm is off by more than tol
    static BasicStatevector from_amplitudes(Amplitudes amplitudes, Scalar tol = Scalar(1e-10)) {
        const Eigen::Index dim = amplitudes.size();
        int n = 0;
        while ((Eigen::Index{ 1 } << n) < dim) {
            ++n;
        }
        if (dim < 2 || (Eigen::Index{ 1 } << n) != dim) {
            throw std::invalid_argument("amplitude count must be a power of two >= 2");
        }
        check_qubits(n);
        if (!amplitudes.allFinite()) {
            throw std::invalid_argument("non-finite amplitude");
        }
        if (std::abs(amplitudes.norm() - Scalar(1)) > tol) {
            throw std::invalid_argument("amplitudes are not normalized");
        }
        BasicStatevector s;
        s.n_qubits_ = n;
        s.amplitudes_ = std::move(amplitudes);
        return s;
    }

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] Eigen::Index dim() const { return amplitudes_.size(); }
    [[nodiscard]] const Amplitudes &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex operator[](Eigen::Index i) const { return amplitudes_(i); }
    [[nodiscard]] Scalar norm() const { return amplitudes_.norm(); }

    // in-place action of one gate; the only mutating entry point
    void apply(const BasicGate<Scalar> &gate) {
        gate.validate_for(n_qubits_);
        const auto u = gate.local_matrix();
        if (gate.arity() == 1) {
            apply_single(gate.qubits[0], u);
        } else {
            apply_pair(gate.qubits[0], gate.qubits[1], u);
        }
    }

private:
    BasicStatevector() = default;

    static void check_qubits(int n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
        }
    }

    template <typename Matrix>
    void apply_single(int q, const Matrix &u) {
        const Eigen::Index stride = Eigen::Index{ 1 } << q;
        const Eigen::Index dim = amplitudes_.size();
        const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
        for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
            for (Eigen::Index k = base; k < base + stride; ++k) {
                const Complex a0 = amplitudes_(k);
                const Complex a1 = amplitudes_(k + stride);
                amplitudes_(k) = u00 * a0 + u01 * a1;
                amplitudes_(k + stride) = u10 * a0 + u11 * a1;
            }
        }
    }

    template <typename Matrix>
    void apply_pair(int high, int low, const Matrix &u) {
        const Eigen::Index hbit = Eigen::Index{ 1 } << high;
        const Eigen::Index lbit = Eigen::Index{ 1 } << low;
        const Eigen::Index dim = amplitudes_.size();
        std::array<Eigen::Index, 4> idx{};
        std::array<Complex, 4> in{};
        for (Eigen::Index k = 0; k < dim; ++k) {
            if ((k & hbit) != 0 || (k & lbit) != 0) {
                continue;
            }
            idx = { k, k | lbit, k | hbit, k | hbit | lbit };
            for (int r = 0; r < 4; ++r) {
                in[r] = amplitudes_(idx[r]);
            }
            for (int r = 0; r < 4; ++r) {
                Complex acc{};
                for (int c = 0; c < 4; ++c) {
                    acc += u(r, c) * in[c];
                }
                amplitudes_(idx[r]) = acc;
            }
        }
    }

    int n_qubits_ = 0;
    Amplitudes amplitudes_;
};

using Gate = BasicGate<double>;
using Circuit = BasicCircuit<double>;
using Statevector = BasicStatevector<double>;

template <typename Scalar>
[[nodiscard]] BasicStatevector<Scalar> apply_gate(BasicStatevector<Scalar> state, const BasicGate<Scalar> &gate) {
    state.apply(gate);
    return state;
}

// gates applied left to right
template <typename Scalar>
[[nodiscard]] BasicStatevector<Scalar> run_circuit(const BasicCircuit<Scalar> &circuit, BasicStatevector<Scalar> initial) {
    if (circuit.n_qubits() != initial.n_qubits()) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.n_qubits()) + " qubits but the state has " + std::to_string(initial.n_qubits()));
    }
    for (const auto &gate : circuit.gates()) {
        initial.apply(gate);
    }
    return initial;
}

// <a|b>, conjugate-linear in a
template <typename Scalar>
[[nodiscard]] std::complex<Scalar> inner_product(const BasicStatevector<Scalar> &a, const BasicStatevector<Scalar> &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    return a.amplitudes().dot(b.amplitudes());
}

// |<a|b>|^2
template <typename Scalar>
[[nodiscard]] Scalar fidelity(const BasicStatevector<Scalar> &a, const BasicStatevector<Scalar> &b) {
    return std::norm(inner_product(a, b));
}

// <psi| Z (x) ... (x) Z |psi>
template <typename Scalar>
[[nodiscard]] Scalar expectation_parity_z(const BasicStatevector<Scalar> &state) {
    Scalar acc = Scalar(0);
    const auto &amps = state.amplitudes();
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        const Scalar p = std::norm(amps(b));
        acc += (std::popcount(static_cast<unsigned long long>(b)) & 1) ? -p : p;
    }
    return acc;
}

}  // namespace qgenome
