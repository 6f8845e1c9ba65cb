#include "qsel/qsim/pauli.hpp"

#include <map>

#include "qsel/common/errors.hpp"

namespace qsel::qsim {

namespace {

constexpr Complex kI{0.0, 1.0};

// Bit position of a 1-based site: site 1 is the most significant bit.
inline int bit_of_site(int n_qubits, int site) { return n_qubits - site; }

struct StringAction {
    Eigen::Index flip_mask = 0;  // bits toggled by X/Y factors
    Eigen::Index z_mask = 0;     // bits contributing (-1)^bit
    Eigen::Index y_mask = 0;     // bits contributing +/- i
    int y_count = 0;
    Complex prefactor = 1.0;     // phase from collapsing repeated sites
};

// Collapses repeated factors on one site with the Pauli algebra
// (left-to-right operator product), then compiles bit masks.
// Ops are encoded 0=I, 1=X, 2=Y, 3=Z.
StringAction compile_string(int n_qubits,
                            const std::vector<std::pair<int, Axis>>& factors) {
    std::map<int, int> site_ops;
    Complex pre = 1.0;
    for (const auto& [site, axis] : factors) {
        if (site < 1 || site > n_qubits) {
            throw config_error("pauli string: site index out of range");
        }
        int b = static_cast<int>(axis) + 1;
        int& cur = site_ops[site];
        if (cur == 0) {
            cur = b;
        } else if (cur == b) {
            cur = 0;
        } else {
            // sigma_a sigma_b = i eps_abc sigma_c for a != b
            int c = 6 - cur - b;
            bool cyclic = (cur == 1 && b == 2) || (cur == 2 && b == 3) ||
                          (cur == 3 && b == 1);
            pre *= cyclic ? kI : -kI;
            cur = c;
        }
    }

    StringAction a;
    a.prefactor = pre;
    for (const auto& [site, op] : site_ops) {
        if (op == 0) continue;
        Eigen::Index bit = Eigen::Index{1} << bit_of_site(n_qubits, site);
        switch (op) {
            case 1: a.flip_mask ^= bit; break;
            case 2:
                a.flip_mask ^= bit;
                a.y_mask |= bit;
                ++a.y_count;
                break;
            case 3: a.z_mask ^= bit; break;
        }
    }
    return a;
}

// Phase acquired by basis state |j> under the collapsed string:
// sigma^z|b> = (-1)^b |b>, sigma^y|0> = i|1>, sigma^y|1> = -i|0>.
inline Complex source_phase(Eigen::Index j, const StringAction& a) {
    int z_par = __builtin_parityll(static_cast<unsigned long long>(j & a.z_mask));
    int y_ones =
        __builtin_popcountll(static_cast<unsigned long long>(j & a.y_mask));
    static const Complex table[4] = {1.0, kI, -1.0, -kI};
    Complex phase = table[(a.y_count + 2 * y_ones) % 4];
    return (z_par ? -phase : phase) * a.prefactor;
}

}  // namespace

char axis_to_char(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        default: return 'z';
    }
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'x': case 'X': return Axis::X;
        case 'y': case 'Y': return Axis::Y;
        case 'z': case 'Z': return Axis::Z;
        default: throw config_error("axis_from_char: expected one of x, y, z");
    }
}

Eigen::Matrix2cd pauli_matrix(Axis a) {
    Eigen::Matrix2cd m;
    switch (a) {
        case Axis::X: m << 0, 1, 1, 0; break;
        case Axis::Y: m << 0, -kI, kI, 0; break;
        case Axis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Vector apply_pauli_string(const Vector& amplitudes, int n_qubits,
                          const std::vector<std::pair<int, Axis>>& factors) {
    const StringAction a = compile_string(n_qubits, factors);
    const Eigen::Index dim = amplitudes.size();
    Vector out = Vector::Zero(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        out[j ^ a.flip_mask] += source_phase(j, a) * amplitudes[j];
    }
    return out;
}

void add_pauli_term(Matrix& h, int n_qubits, const PauliTerm& term) {
    const StringAction a = compile_string(n_qubits, term.factors);
    const Eigen::Index dim = h.rows();
    for (Eigen::Index j = 0; j < dim; ++j) {
        h(j ^ a.flip_mask, j) += term.coeff * source_phase(j, a);
    }
}

double pauli_expectation(const Vector& amplitudes, int n_qubits,
                         const std::vector<std::pair<int, Axis>>& factors) {
    const StringAction a = compile_string(n_qubits, factors);
    Complex acc = 0.0;
    for (Eigen::Index j = 0; j < amplitudes.size(); ++j) {
        acc += std::conj(amplitudes[j ^ a.flip_mask]) * source_phase(j, a) *
               amplitudes[j];
    }
    return acc.real();
}

}  // namespace qsel::qsim
