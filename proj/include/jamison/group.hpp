#pragma once

// Countably infinite discrete abelian groups: Z^l x Z/a_1 x ... x Z/a_r with
// arbitrary free rank, or Z^infty (all finitely supported integer sequences).
// Elements are sparse integer vectors plus reduced torsion residues.

#include <map>
#include <sstream>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "jamison/errors.hpp"

namespace jamison {

struct GroupElement {
    std::map<int, mpz_class> free;    // coordinate -> integer, finite support
    std::vector<mpz_class> torsion;   // residue per torsion slot, reduced into [0, a_i)

    bool operator==(const GroupElement& o) const { return free == o.free && torsion == o.torsion; }
    bool operator<(const GroupElement& o) const {
        if (free != o.free) return free < o.free;
        return torsion < o.torsion;
    }
};

class GroupDescriptor {
public:
    static constexpr long kCountable = -1;

    GroupDescriptor() = default;
    GroupDescriptor(long free_rank, std::vector<long> torsion_orders = {})
        : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
        validate();
    }

    static GroupDescriptor integers() { return GroupDescriptor(1); }
    static GroupDescriptor free_abelian(long rank) { return GroupDescriptor(rank); }
    static GroupDescriptor countable_free() { return GroupDescriptor(kCountable); }

    long free_rank() const { return free_rank_; }
    bool countable_free_part() const { return free_rank_ == kCountable; }
    const std::vector<long>& torsion_orders() const { return torsion_; }
    long torsion_count() const { return static_cast<long>(torsion_.size()); }
    bool finitely_generated() const { return free_rank_ >= 0; }

    bool operator==(const GroupDescriptor& o) const {
        return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
    }

    bool valid_coordinate(int c) const {
        return c >= 0 && (countable_free_part() || c < free_rank_);
    }

    GroupElement zero() const {
        GroupElement g;
        g.torsion.assign(torsion_.size(), mpz_class(0));
        return g;
    }

    /// Canonical basis vector of the free part.
    GroupElement basis(int coordinate) const {
        if (!valid_coordinate(coordinate))
            throw ValidationError("element.coordinate", "coordinate out of range");
        GroupElement g = zero();
        g.free[coordinate] = 1;
        return g;
    }

    GroupElement torsion_unit(int slot) const {
        GroupElement g = zero();
        g.torsion.at(static_cast<size_t>(slot)) = 1;
        return g;
    }

    GroupElement make(std::map<int, mpz_class> free_part, std::vector<mpz_class> torsion_part = {}) const {
        GroupElement g;
        g.free = std::move(free_part);
        g.torsion = std::move(torsion_part);
        g.torsion.resize(torsion_.size(), mpz_class(0));
        normalize(g);
        return g;
    }

    void normalize(GroupElement& g) const {
        for (auto it = g.free.begin(); it != g.free.end();) {
            if (!valid_coordinate(it->first))
                throw ValidationError("element.coordinate", "coordinate out of range");
            if (it->second == 0)
                it = g.free.erase(it);
            else
                ++it;
        }
        g.torsion.resize(torsion_.size(), mpz_class(0));
        for (size_t i = 0; i < torsion_.size(); ++i) {
            mpz_class m(torsion_[i]);
            mpz_fdiv_r(g.torsion[i].get_mpz_t(), g.torsion[i].get_mpz_t(), m.get_mpz_t());
        }
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        GroupElement g = a;
        for (const auto& [c, v] : b.free) g.free[c] += v;
        g.torsion.resize(torsion_.size(), mpz_class(0));
        for (size_t i = 0; i < torsion_.size() && i < b.torsion.size(); ++i)
            g.torsion[i] += b.torsion[i];
        normalize(g);
        return g;
    }

    GroupElement neg(const GroupElement& a) const {
        GroupElement g;
        for (const auto& [c, v] : a.free) g.free[c] = -v;
        g.torsion.resize(torsion_.size(), mpz_class(0));
        for (size_t i = 0; i < a.torsion.size(); ++i) g.torsion[i] = -a.torsion[i];
        normalize(g);
        return g;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

    GroupElement scale(const mpz_class& n, const GroupElement& a) const {
        GroupElement g;
        for (const auto& [c, v] : a.free) g.free[c] = n * v;
        g.torsion.resize(torsion_.size(), mpz_class(0));
        for (size_t i = 0; i < a.torsion.size(); ++i) g.torsion[i] = n * a.torsion[i];
        normalize(g);
        return g;
    }

    bool is_zero(const GroupElement& g) const {
        if (!g.free.empty()) return false;
        for (const auto& t : g.torsion)
            if (t != 0) return false;
        return true;
    }

    /// Largest touched free coordinate + 1, i.e. the length of the dense prefix.
    int free_span(const GroupElement& g) const {
        int n = countable_free_part() ? 0 : static_cast<int>(free_rank_);
        for (const auto& [c, v] : g.free)
            if (c + 1 > n) n = c + 1;
        return n;
    }

    std::string to_string(const GroupElement& g) const {
        std::ostringstream os;
        os << "(";
        int span = free_span(g);
        for (int c = 0; c < span; ++c) {
            if (c) os << ",";
            auto it = g.free.find(c);
            os << (it == g.free.end() ? mpz_class(0) : it->second);
        }
        if (!torsion_.empty()) {
            os << "|";
            for (size_t i = 0; i < torsion_.size(); ++i) {
                if (i) os << ",";
                os << (i < g.torsion.size() ? g.torsion[i] : mpz_class(0));
            }
        }
        os << ")";
        return os.str();
    }

private:
    void validate() const {
        if (free_rank_ < 0 && free_rank_ != kCountable)
            throw ValidationError("group.free_rank", "free rank must be >= 0 or countable");
        for (size_t i = 0; i < torsion_.size(); ++i)
            if (torsion_[i] < 2)
                throw ValidationError("group.torsion[" + std::to_string(i) + "]",
                                      "torsion orders must be >= 2");
        if (free_rank_ == kCountable && !torsion_.empty())
            throw ValidationError("group.torsion",
                                  "countable free rank excludes torsion components");
    }

    long free_rank_ = 0;
    std::vector<long> torsion_ = {};
};

} // namespace jamison
