#pragma once

// Characters of a discrete abelian group as points of the dual torus: one
// angle per free coordinate (exact rational or double) plus one residue per
// torsion slot. Missing coordinates read as angle zero, which keeps
// characters of Z^infty finitely describable.

#include <complex>
#include <map>
#include <vector>
#include <gmpxx.h>

#include "jamison/angles.hpp"
#include "jamison/errors.hpp"
#include "jamison/group.hpp"

namespace jamison {

class Character {
public:
    Character() = default;

    static Character trivial(const GroupDescriptor& desc) {
        Character c;
        c.desc_ = desc;
        c.exact_ = true;
        c.torsion_.assign(desc.torsion_orders().size(), mpz_class(0));
        return c;
    }

    static Character exact(const GroupDescriptor& desc, std::map<int, mpq_class> angles,
                           std::vector<mpz_class> torsion_numerators = {}) {
        Character c = trivial(desc);
        for (auto& [coord, a] : angles) {
            if (!desc.valid_coordinate(coord))
                throw ValidationError("character.coordinate", "coordinate out of range");
            mpq_class r = mod1(a);
            if (r != 0) c.exact_angles_[coord] = r;
        }
        c.set_torsion(std::move(torsion_numerators));
        return c;
    }

    static Character approximate(const GroupDescriptor& desc, std::map<int, double> angles,
                                 std::vector<mpz_class> torsion_numerators = {}) {
        Character c = trivial(desc);
        c.exact_ = false;
        for (auto& [coord, a] : angles) {
            if (!desc.valid_coordinate(coord))
                throw ValidationError("character.coordinate", "coordinate out of range");
            double r = mod1_d(a);
            if (r != 0.0) c.float_angles_[coord] = r;
        }
        c.set_torsion(std::move(torsion_numerators));
        return c;
    }

    const GroupDescriptor& group() const { return desc_; }
    bool is_exact() const { return exact_; }
    const std::map<int, mpq_class>& exact_angles() const { return exact_angles_; }
    const std::map<int, double>& float_angles() const { return float_angles_; }
    const std::vector<mpz_class>& torsion_numerators() const { return torsion_; }

    bool is_trivial() const {
        if (!exact_angles_.empty() || !float_angles_.empty()) return false;
        for (const auto& t : torsion_)
            if (t != 0) return false;
        return true;
    }

    /// chi(g) as an exact angle of the resulting root of unity.
    mpq_class eval_angle_exact(const GroupElement& g) const {
        if (!exact_) throw ValidationError("character", "exact evaluation of a float character");
        mpq_class acc(0);
        for (const auto& [coord, a] : exact_angles_) {
            auto it = g.free.find(coord);
            if (it != g.free.end()) acc += a * it->second;
        }
        const auto& orders = desc_.torsion_orders();
        for (size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] == 0) continue;
            auto r = i < g.torsion.size() ? g.torsion[i] : mpz_class(0);
            if (r != 0) acc += mpq_class(torsion_[i] * r, mpz_class(orders[i]));
        }
        return mod1(acc);
    }

    double eval_angle(const GroupElement& g) const {
        if (exact_) return eval_angle_exact(g).get_d();
        double acc = 0.0;
        for (const auto& [coord, a] : float_angles_) {
            auto it = g.free.find(coord);
            if (it == g.free.end()) continue;
            if (mpz_sizeinbase(it->second.get_mpz_t(), 2) > 48)
                throw BudgetExceededError("float character on a coordinate value beyond double range");
            acc = mod1_d(acc + mod1_d(a * it->second.get_d()));
        }
        const auto& orders = desc_.torsion_orders();
        for (size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] == 0) continue;
            auto r = i < g.torsion.size() ? g.torsion[i] : mpz_class(0);
            if (r != 0) acc = mod1_d(acc + mpq_class(torsion_[i] * r, mpz_class(orders[i])).get_d());
        }
        return acc;
    }

    std::complex<double> value(const GroupElement& g) const {
        double a = 2.0 * M_PI * eval_angle(g);
        return {std::cos(a), std::sin(a)};
    }

    Character conjugate() const {
        Character c = *this;
        for (auto& [coord, a] : c.exact_angles_) a = mod1(-a);
        for (auto& [coord, a] : c.float_angles_) a = mod1_d(-a);
        prune(c.exact_angles_);
        prune(c.float_angles_);
        const auto& orders = desc_.torsion_orders();
        for (size_t i = 0; i < c.torsion_.size(); ++i)
            if (c.torsion_[i] != 0) c.torsion_[i] = orders[i] - c.torsion_[i];
        return c;
    }

    Character times(const Character& o) const {
        if (!(desc_ == o.desc_))
            throw ValidationError("character", "product of characters of different groups");
        if (exact_ && o.exact_) {
            Character c = trivial(desc_);
            c.exact_angles_ = exact_angles_;
            for (const auto& [coord, a] : o.exact_angles_) {
                mpq_class r = mod1(c.exact_angles_[coord] + a);
                if (r == 0)
                    c.exact_angles_.erase(coord);
                else
                    c.exact_angles_[coord] = r;
            }
            c.torsion_ = torsion_;
            const auto& orders = desc_.torsion_orders();
            for (size_t i = 0; i < c.torsion_.size(); ++i) {
                c.torsion_[i] += o.torsion_[i];
                mpz_class m(orders[i]);
                mpz_fdiv_r(c.torsion_[i].get_mpz_t(), c.torsion_[i].get_mpz_t(), m.get_mpz_t());
            }
            return c;
        }
        Character c = trivial(desc_);
        c.exact_ = false;
        auto absorb = [&](const Character& src) {
            for (const auto& [coord, a] : src.exact_angles_)
                c.float_angles_[coord] = mod1_d(c.float_angles_[coord] + a.get_d());
            for (const auto& [coord, a] : src.float_angles_)
                c.float_angles_[coord] = mod1_d(c.float_angles_[coord] + a);
        };
        absorb(*this);
        absorb(o);
        prune(c.float_angles_);
        c.torsion_ = torsion_;
        const auto& orders = desc_.torsion_orders();
        for (size_t i = 0; i < c.torsion_.size(); ++i) {
            c.torsion_[i] += o.torsion_[i];
            mpz_class m(orders[i]);
            mpz_fdiv_r(c.torsion_[i].get_mpz_t(), c.torsion_[i].get_mpz_t(), m.get_mpz_t());
        }
        return c;
    }

    /// Exact characters compare by reduced angles; float ones by tolerance.
    bool same_as(const Character& o, double tol = 1e-12) const {
        if (torsion_ != o.torsion_) return false;
        if (exact_ && o.exact_) return exact_angles_ == o.exact_angles_;
        auto angle_at = [](const Character& c, int coord) -> double {
            if (c.exact_) {
                auto it = c.exact_angles_.find(coord);
                return it == c.exact_angles_.end() ? 0.0 : it->second.get_d();
            }
            auto it = c.float_angles_.find(coord);
            return it == c.float_angles_.end() ? 0.0 : it->second;
        };
        std::map<int, char> coords;
        for (const auto& [c, a] : exact_angles_) coords[c] = 1;
        for (const auto& [c, a] : float_angles_) coords[c] = 1;
        for (const auto& [c, a] : o.exact_angles_) coords[c] = 1;
        for (const auto& [c, a] : o.float_angles_) coords[c] = 1;
        for (const auto& [coord, unused] : coords)
            if (fold_angle_d(angle_at(*this, coord) - angle_at(o, coord)) > tol) return false;
        return true;
    }

private:
    template <typename Map>
    static void prune(Map& m) {
        for (auto it = m.begin(); it != m.end();)
            it = (it->second == typename Map::mapped_type{}) ? m.erase(it) : std::next(it);
    }

    void set_torsion(std::vector<mpz_class> t) {
        const auto& orders = desc_.torsion_orders();
        t.resize(orders.size(), mpz_class(0));
        for (size_t i = 0; i < t.size(); ++i) {
            mpz_class m(orders[i]);
            mpz_fdiv_r(t[i].get_mpz_t(), t[i].get_mpz_t(), m.get_mpz_t());
        }
        torsion_ = std::move(t);
    }

    GroupDescriptor desc_;
    bool exact_ = true;
    std::map<int, mpq_class> exact_angles_;
    std::map<int, double> float_angles_;
    std::vector<mpz_class> torsion_;
};

/// |chi(g) - phi(g)|, through the angle difference, never complex subtraction.
inline double pair_gap(const Character& chi, const Character& phi, const GroupElement& g) {
    if (chi.is_exact() && phi.is_exact())
        return chord(chi.eval_angle_exact(g) - phi.eval_angle_exact(g));
    return chord_d(chi.eval_angle(g) - phi.eval_angle(g));
}

/// Folded exact angle of the gap; requires exact characters.
inline mpq_class pair_gap_fold(const Character& chi, const Character& phi, const GroupElement& g) {
    return fold_angle(chi.eval_angle_exact(g) - phi.eval_angle_exact(g));
}

} // namespace jamison
