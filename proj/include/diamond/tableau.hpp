// Copyright 2025 The diamond-circuits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "diamond/circuit.hpp"

namespace diamond {

/// A GF(2) affine form: constant xor a subset of measurement coins. Coins are
/// allocated when a measurement outcome is genuinely random; tracking them
/// symbolically makes detector determinism an exact statement instead of a
/// sampled one.
struct AffineBit {
    bool constant = false;
    std::vector<uint64_t> coins;  // bitset over coin indices

    void ensure(size_t words) {
        if (coins.size() < words) coins.resize(words, 0);
    }
    void flip_coin(size_t k) {
        ensure(k / 64 + 1);
        coins[k / 64] ^= uint64_t(1) << (k % 64);
    }
    void operator^=(const AffineBit& o) {
        constant ^= o.constant;
        ensure(o.coins.size());
        for (size_t i = 0; i < o.coins.size(); i++) coins[i] ^= o.coins[i];
    }
    bool deterministic() const {
        for (uint64_t w : coins) {
            if (w) return false;
        }
        return true;
    }
    bool operator==(const AffineBit& o) const {
        if (constant != o.constant) return false;
        size_t m = std::max(coins.size(), o.coins.size());
        for (size_t i = 0; i < m; i++) {
            uint64_t a = i < coins.size() ? coins[i] : 0;
            uint64_t b = i < o.coins.size() ? o.coins[i] : 0;
            if (a != b) return false;
        }
        return true;
    }
};

/// One row of a stabilizer snapshot, sign ignored.
struct PauliRow {
    std::vector<uint64_t> x, z;
};

/// Sign-free span of Pauli rows with GF(2) membership queries.
struct StabilizerGroup {
    size_t n = 0;
    std::vector<PauliRow> rows;

    /// True iff p is in the span of rows, ignoring signs.
    bool contains(const PauliRow& p) const {
        size_t words = (n + 63) / 64;
        std::vector<PauliRow> basis = rows;
        PauliRow cur = p;
        cur.x.resize(words, 0);
        cur.z.resize(words, 0);
        // Gaussian elimination over the symplectic columns.
        std::vector<bool> used(basis.size(), false);
        for (size_t col = 0; col < 2 * n; col++) {
            size_t w = (col % n) / 64, b = (col % n) % 64;
            bool xhalf = col < n;
            auto bit = [&](const PauliRow& r) {
                const auto& v = xhalf ? r.x : r.z;
                return w < v.size() && ((v[w] >> b) & 1);
            };
            size_t piv = basis.size();
            for (size_t i = 0; i < basis.size(); i++) {
                if (!used[i] && bit(basis[i])) {
                    piv = i;
                    break;
                }
            }
            if (piv == basis.size()) continue;
            used[piv] = true;
            for (size_t i = 0; i < basis.size(); i++) {
                if (i != piv && bit(basis[i])) {
                    for (size_t k = 0; k < words; k++) {
                        basis[i].x[k] ^= basis[piv].x[k];
                        basis[i].z[k] ^= basis[piv].z[k];
                    }
                }
            }
            if (bit(cur)) {
                for (size_t k = 0; k < words; k++) {
                    cur.x[k] ^= basis[piv].x[k];
                    cur.z[k] ^= basis[piv].z[k];
                }
            }
        }
        for (size_t k = 0; k < cur.x.size(); k++) {
            if (cur.x[k] || cur.z[k]) return false;
        }
        return true;
    }
};

/// Aaronson-Gottesman CHP tableau with destabilizers and symbolic signs.
class TableauSimulator {
  public:
    explicit TableauSimulator(size_t n) : n_(n), words_((n + 63) / 64) {
        rows_.resize(2 * n);
        signs_.resize(2 * n);
        for (size_t i = 0; i < 2 * n; i++) {
            rows_[i].x.assign(words_, 0);
            rows_[i].z.assign(words_, 0);
        }
        for (size_t i = 0; i < n; i++) {
            set_bit(rows_[i].x, i);          // destabilizer X_i
            set_bit(rows_[n + i].z, i);      // stabilizer Z_i
        }
    }

    size_t coin_count() const { return coins_; }

    void h(size_t q) {
        for (size_t i = 0; i < 2 * n_; i++) {
            bool x = get_bit(rows_[i].x, q), z = get_bit(rows_[i].z, q);
            if (x && z) signs_[i].constant ^= 1;
            if (x != z) {
                toggle_bit(rows_[i].x, q);
                toggle_bit(rows_[i].z, q);
            }
        }
    }

    void cx(size_t c, size_t t) {
        for (size_t i = 0; i < 2 * n_; i++) {
            bool xc = get_bit(rows_[i].x, c), zc = get_bit(rows_[i].z, c);
            bool xt = get_bit(rows_[i].x, t), zt = get_bit(rows_[i].z, t);
            if (xc && zt && (xt == zc)) signs_[i].constant ^= 1;
            if (xc) toggle_bit(rows_[i].x, t);
            if (zt) toggle_bit(rows_[i].z, c);
        }
    }

    AffineBit measure_z(size_t q) {
        size_t p = 2 * n_;
        for (size_t i = n_; i < 2 * n_; i++) {
            if (get_bit(rows_[i].x, q)) {
                p = i;
                break;
            }
        }
        if (p < 2 * n_) {
            // Random outcome: allocate a fresh coin.
            for (size_t i = 0; i < 2 * n_; i++) {
                if (i != p && get_bit(rows_[i].x, q)) rowsum(i, p);
            }
            rows_[p - n_] = rows_[p];
            signs_[p - n_] = signs_[p];
            rows_[p].x.assign(words_, 0);
            rows_[p].z.assign(words_, 0);
            set_bit(rows_[p].z, q);
            AffineBit outcome;
            outcome.flip_coin(coins_++);
            signs_[p] = outcome;
            return outcome;
        }
        // Deterministic: accumulate the product of stabilizers selected by the
        // destabilizer X-column.
        scratch_.x.assign(words_, 0);
        scratch_.z.assign(words_, 0);
        scratch_sign_ = AffineBit{};
        for (size_t i = 0; i < n_; i++) {
            if (get_bit(rows_[i].x, q)) rowsum_into_scratch(n_ + i);
        }
        return scratch_sign_;
    }

    AffineBit measure_x(size_t q) {
        h(q);
        AffineBit r = measure_z(q);
        h(q);
        return r;
    }

    void reset_z(size_t q) {
        AffineBit e = measure_z(q);
        // Conditional X correction: flips the sign of every row with a Z
        // component on q.
        for (size_t i = 0; i < 2 * n_; i++) {
            if (get_bit(rows_[i].z, q)) signs_[i] ^= e;
        }
    }

    void reset_x(size_t q) {
        h(q);
        reset_z(q);
        h(q);
    }

    /// Current stabilizer rows, signs dropped.
    StabilizerGroup stabilizer_group() const {
        StabilizerGroup g;
        g.n = n_;
        for (size_t i = n_; i < 2 * n_; i++) g.rows.push_back(rows_[i]);
        return g;
    }

    size_t num_qubits() const { return n_; }

  private:
    static void set_bit(std::vector<uint64_t>& v, size_t i) { v[i / 64] |= uint64_t(1) << (i % 64); }
    static void toggle_bit(std::vector<uint64_t>& v, size_t i) { v[i / 64] ^= uint64_t(1) << (i % 64); }
    static bool get_bit(const std::vector<uint64_t>& v, size_t i) {
        return (v[i / 64] >> (i % 64)) & 1;
    }

    // Phase contribution of multiplying single-qubit Paulis (x1,z1)*(x2,z2),
    // as an exponent of i in {-1,0,1}.
    static int g_phase(bool x1, bool z1, bool x2, bool z2) {
        if (!x1 && !z1) return 0;
        if (x1 && z1) return (z2 ? 1 : 0) - (x2 ? 1 : 0);
        if (x1) return z2 ? (x2 ? 1 : -1) : 0;
        return x2 ? (z2 ? -1 : 1) : 0;
    }

    int gsum(const PauliRow& a, const PauliRow& b) const {
        int s = 0;
        for (size_t q = 0; q < n_; q++) {
            s += g_phase(get_bit(b.x, q), get_bit(b.z, q), get_bit(a.x, q), get_bit(a.z, q));
        }
        return s;
    }

    // row[h] *= row[i]. Stabilizer-row operands commute, so the product phase
    // is real; destabilizer-row signs are not tracked.
    void rowsum(size_t h, size_t i) {
        if (h >= n_) {
            int s = gsum(rows_[h], rows_[i]);
            assert(((s % 2) + 2) % 2 == 0);
            if (((s % 4) + 4) % 4 == 2) signs_[h].constant ^= 1;
            signs_[h] ^= signs_[i];
        }
        for (size_t k = 0; k < words_; k++) {
            rows_[h].x[k] ^= rows_[i].x[k];
            rows_[h].z[k] ^= rows_[i].z[k];
        }
    }

    void rowsum_into_scratch(size_t i) {
        int s = gsum(scratch_, rows_[i]);
        assert(((s % 2) + 2) % 2 == 0);
        if (((s % 4) + 4) % 4 == 2) scratch_sign_.constant ^= 1;
        scratch_sign_ ^= signs_[i];
        for (size_t k = 0; k < words_; k++) {
            scratch_.x[k] ^= rows_[i].x[k];
            scratch_.z[k] ^= rows_[i].z[k];
        }
    }

    size_t n_, words_;
    std::vector<PauliRow> rows_;
    std::vector<AffineBit> signs_;
    size_t coins_ = 0;
    PauliRow scratch_;
    AffineBit scratch_sign_;
};

struct TableauRunReport {
    std::vector<AffineBit> measurements;
    std::vector<AffineBit> detectors;     // per DETECTOR instruction
    std::vector<AffineBit> observables;   // per observable id
    std::vector<StabilizerGroup> snapshots;

    bool all_detectors_deterministic_zero() const {
        for (const auto& d : detectors) {
            if (!d.deterministic() || d.constant) return false;
        }
        return true;
    }
    bool all_observables_deterministic() const {
        for (const auto& o : observables) {
            if (!o.deterministic()) return false;
        }
        return true;
    }
};

/// Runs a noiseless circuit through the tableau simulator, evaluating every
/// measurement outcome as an affine form over measurement coins. A detector
/// or observable is deterministic exactly when its coin part cancels.
/// `snapshot_ticks` selects 0-based TICK indices at which to capture the
/// stabilizer group.
inline TableauRunReport tableau_run(const Circuit& circuit,
                                    const std::vector<size_t>& snapshot_ticks = {}) {
    size_t n = (size_t)circuit.max_qubit_index() + 1;
    TableauSimulator sim(n);
    TableauRunReport rep;
    size_t tick_no = 0;
    for (const auto& ins : circuit.instructions) {
        switch (ins.op) {
            case Op::TICK: {
                for (size_t t : snapshot_ticks) {
                    if (t == tick_no) rep.snapshots.push_back(sim.stabilizer_group());
                }
                tick_no++;
                break;
            }
            case Op::CX: {
                for (size_t i = 0; i + 1 < ins.qubits.size(); i += 2) {
                    sim.cx(ins.qubits[i], ins.qubits[i + 1]);
                }
                break;
            }
            case Op::RZ:
                for (int32_t q : ins.qubits) sim.reset_z(q);
                break;
            case Op::RX:
                for (int32_t q : ins.qubits) sim.reset_x(q);
                break;
            case Op::MZ:
                for (int32_t q : ins.qubits) rep.measurements.push_back(sim.measure_z(q));
                break;
            case Op::MX:
                for (int32_t q : ins.qubits) rep.measurements.push_back(sim.measure_x(q));
                break;
            case Op::DETECTOR: {
                AffineBit d;
                for (const auto& r : ins.recs) d ^= rep.measurements.at(r.abs);
                rep.detectors.push_back(std::move(d));
                break;
            }
            case Op::OBSERVABLE_INCLUDE: {
                size_t id = ins.args.empty() ? 0 : (size_t)ins.args[0];
                if (rep.observables.size() <= id) rep.observables.resize(id + 1);
                for (const auto& r : ins.recs) rep.observables[id] ^= rep.measurements.at(r.abs);
                break;
            }
            case Op::POLYGON:
                break;
        }
    }
    // Trailing snapshot request at the final tick boundary.
    for (size_t t : snapshot_ticks) {
        if (t == tick_no) rep.snapshots.push_back(sim.stabilizer_group());
    }
    return rep;
}

}  // namespace diamond
