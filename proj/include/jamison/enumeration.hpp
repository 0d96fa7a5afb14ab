#pragma once

// Deterministic enumeration G = {h_1, h_2, ...}: shells of increasing
// max-norm, lexicographic within a shell, identity first. The weight w and
// everything built on it depend on this choice, so reports record its id.

#include <map>
#include <optional>
#include <vector>
#include <gmpxx.h>

#include "jamison/errors.hpp"
#include "jamison/group.hpp"

namespace jamison {

class Enumeration {
public:
    explicit Enumeration(GroupDescriptor desc) : desc_(std::move(desc)) {}

    static constexpr const char* id() { return "shell-lex-v1"; }

    const GroupDescriptor& group() const { return desc_; }

    /// h_n, 1-based; h_1 is the identity.
    const GroupElement& at(size_t n) {
        ensure(n);
        return items_[n - 1];
    }

    void ensure(size_t count, size_t cap = 50'000'000) {
        int stalled = 0;
        while (items_.size() < count) {
            if (items_.size() > cap) throw SupportTooLargeError("enumeration cap exceeded");
            size_t before = items_.size();
            grow_shell();
            if (items_.size() == before) {
                if (++stalled > 2 && desc_.free_rank() == 0)
                    throw SupportTooLargeError("enumeration exhausted: group is finite");
                if (stalled > 1000) throw SupportTooLargeError("enumeration stalled");
            } else {
                stalled = 0;
            }
        }
    }

    /// 1-based index of g, searching at most `limit` elements.
    std::optional<size_t> index_of(const GroupElement& g, size_t limit) {
        auto it = index_.find(g);
        if (it != index_.end()) return it->second;
        while (items_.size() < limit) {
            size_t before = items_.size();
            grow_shell();
            it = index_.find(g);
            if (it != index_.end()) return it->second;
            if (items_.size() == before && desc_.free_rank() == 0) break;
        }
        return std::nullopt;
    }

    long shells_generated() const { return shell_; }

private:
    void grow_shell() {
        ++shell_;
        const long s = shell_;
        if (desc_.countable_free_part()) {
            grow_shell_countable(s);
            return;
        }
        const long l = desc_.free_rank();
        const auto& orders = desc_.torsion_orders();
        const long r = desc_.torsion_count();
        std::vector<mpz_class> x(static_cast<size_t>(l), -s);
        std::vector<long> t(static_cast<size_t>(r), 0);
        auto shell_of = [&]() -> long {
            long m = 0;
            for (const auto& v : x) {
                long a = std::abs(v.get_si());
                if (a > m) m = a;
            }
            for (long i = 0; i < r; ++i) {
                long tn = std::min(t[static_cast<size_t>(i)],
                                   orders[static_cast<size_t>(i)] - t[static_cast<size_t>(i)]);
                if (tn > m) m = tn;
            }
            return m;
        };
        auto push_current = [&]() {
            if (shell_of() != s) return;
            std::map<int, mpz_class> f;
            for (long c = 0; c < l; ++c)
                if (x[static_cast<size_t>(c)] != 0) f[static_cast<int>(c)] = x[static_cast<size_t>(c)];
            std::vector<mpz_class> tors(t.begin(), t.end());
            GroupElement g = desc_.make(std::move(f), std::move(tors));
            items_.push_back(g);
            index_[g] = items_.size();
        };
        // odometer over [-s,s]^l x prod [0,a_i), lexicographic
        for (;;) {
            push_current();
            long pos = l + r;
            bool carried = true;
            while (pos-- > 0) {
                if (pos < l) {
                    auto& v = x[static_cast<size_t>(pos)];
                    v += 1;
                    if (v <= s) {
                        carried = false;
                        break;
                    }
                    v = -s;
                } else {
                    auto& v = t[static_cast<size_t>(pos - l)];
                    v += 1;
                    if (v < orders[static_cast<size_t>(pos - l)]) {
                        carried = false;
                        break;
                    }
                    v = 0;
                }
            }
            if (carried) break;
        }
        if (l == 0 && r == 0 && s == 0) return; // trivial group: single shell
    }

    void grow_shell_countable(long s) {
        if (s == 0) {
            GroupElement z = desc_.zero();
            items_.push_back(z);
            index_[z] = items_.size();
            return;
        }
        // support inside [0,s), entries in [-s,s], shell = max(|x_c|, c+1 for touched c)
        std::vector<mpz_class> x(static_cast<size_t>(s), -s);
        auto shell_of = [&]() -> long {
            long m = 0;
            for (long c = 0; c < s; ++c) {
                const auto& v = x[static_cast<size_t>(c)];
                if (v == 0) continue;
                long a = std::abs(v.get_si());
                if (a > m) m = a;
                if (c + 1 > m) m = c + 1;
            }
            return m;
        };
        for (;;) {
            if (shell_of() == s) {
                std::map<int, mpz_class> f;
                for (long c = 0; c < s; ++c)
                    if (x[static_cast<size_t>(c)] != 0) f[static_cast<int>(c)] = x[static_cast<size_t>(c)];
                GroupElement g = desc_.make(std::move(f));
                items_.push_back(g);
                index_[g] = items_.size();
            }
            long pos = s;
            bool carried = true;
            while (pos-- > 0) {
                auto& v = x[static_cast<size_t>(pos)];
                v += 1;
                if (v <= s) {
                    carried = false;
                    break;
                }
                v = -s;
            }
            if (carried) break;
        }
    }

    GroupDescriptor desc_;
    long shell_ = -1;
    std::vector<GroupElement> items_;
    std::map<GroupElement, size_t> index_;
};

} // namespace jamison
