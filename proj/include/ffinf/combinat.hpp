#pragma once

// Set partitions, non-crossing partitions, permutations, Kreweras complements,
// Moebius functions and annular non-crossing permutations.
//
// Ground sets are {1..n}. Permutation products compose right to left:
// (a*b)(k) = a(b(k)).

#include "scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ffinf {

inline constexpr int kMaxGround = 16;

class Perm;

// Stored as a restricted growth string: label[i] is the index of the block
// containing i+1, blocks numbered by increasing minimum element. This is the
// canonical form (blocks sorted by minimum, elements ascending).
class SetPartition {
public:
    SetPartition() = default;

    explicit SetPartition(int n, const std::vector<std::vector<int>>& blocks) : n_(n) {
        require_size(n >= 0 && n <= kMaxGround, "set partition ground set too large");
        std::array<int, kMaxGround> owner{};
        owner.fill(-1);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            require(!blocks[b].empty(), "empty block");
            for (int x : blocks[b]) {
                require(x >= 1 && x <= n, "block element out of range");
                require(owner[x - 1] < 0, "blocks are not disjoint");
                owner[x - 1] = static_cast<int>(b);
            }
        }
        std::vector<int> raw(n);
        for (int i = 0; i < n; ++i) {
            require(owner[i] >= 0, "blocks do not cover the ground set");
            raw[i] = owner[i];
        }
        set_from_raw(raw);
    }

    // Any labelling (block ids need not be canonical).
    static SetPartition from_labels(const std::vector<int>& labels) {
        SetPartition p;
        require_size(labels.size() <= kMaxGround, "set partition ground set too large");
        p.n_ = static_cast<int>(labels.size());
        p.set_from_raw(labels);
        return p;
    }

    static SetPartition zero(int n) {
        std::vector<int> l(n);
        std::iota(l.begin(), l.end(), 0);
        return from_labels(l);
    }
    static SetPartition one(int n) { return from_labels(std::vector<int>(n, 0)); }

    int n() const { return n_; }
    int size() const { return nblocks_; }
    int label(int element) const { return label_[element - 1]; }

    std::vector<int> labels() const { return {label_.begin(), label_.begin() + n_}; }

    std::vector<std::vector<int>> blocks() const {
        std::vector<std::vector<int>> out(nblocks_);
        for (int i = 0; i < n_; ++i) out[label_[i]].push_back(i + 1);
        return out;
    }

    std::vector<int> block_sizes() const {
        std::vector<int> out(nblocks_, 0);
        for (int i = 0; i < n_; ++i) ++out[label_[i]];
        return out;
    }

    std::uint64_t key() const {
        std::uint64_t k = static_cast<std::uint64_t>(n_);
        for (int i = 0; i < n_; ++i) k = (k << 4) | label_[i];
        return k;
    }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        auto bs = blocks();
        for (std::size_t b = 0; b < bs.size(); ++b) {
            if (b) os << ',';
            os << '{';
            for (std::size_t j = 0; j < bs[b].size(); ++j) os << (j ? "," : "") << bs[b][j];
            os << '}';
        }
        os << '}';
        return os.str();
    }

    friend bool operator==(const SetPartition& a, const SetPartition& b) {
        return a.n_ == b.n_ && std::equal(a.label_.begin(), a.label_.begin() + a.n_, b.label_.begin());
    }
    friend bool operator<(const SetPartition& a, const SetPartition& b) { return a.key() < b.key(); }

private:
    void set_from_raw(const std::vector<int>& raw) {
        std::map<int, int> rename;
        nblocks_ = 0;
        for (int i = 0; i < n_; ++i) {
            auto it = rename.find(raw[i]);
            if (it == rename.end()) it = rename.emplace(raw[i], nblocks_++).first;
            label_[i] = static_cast<std::uint8_t>(it->second);
        }
    }

    int n_ = 0;
    int nblocks_ = 0;
    std::array<std::uint8_t, kMaxGround> label_{};
};

class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            require(v >= 1 && v <= static_cast<int>(img_.size()) && !seen[v - 1],
                    "images do not form a permutation");
            seen[v - 1] = true;
        }
    }

    static Perm identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Perm(std::move(v));
    }
    // gamma_n = (1 2 ... n)
    static Perm gamma(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = (i + 1) % n + 1;
        return Perm(std::move(v));
    }
    // gamma_{t,s} = (1 ... t)(t+1 ... t+s)
    static Perm gamma(int t, int s) {
        std::vector<int> v(t + s);
        for (int i = 0; i < t; ++i) v[i] = (i + 1) % t + 1;
        for (int i = 0; i < s; ++i) v[t + i] = t + (i + 1) % s + 1;
        return Perm(std::move(v));
    }
    // The permutation whose cycles are the blocks, each traversed increasingly.
    static Perm from_partition(const SetPartition& p) {
        std::vector<int> v(p.n());
        for (const auto& b : p.blocks())
            for (std::size_t j = 0; j < b.size(); ++j) v[b[j] - 1] = b[(j + 1) % b.size()];
        return Perm(std::move(v));
    }

    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int k) const { return img_[k - 1]; }
    const std::vector<int>& images() const { return img_; }

    Perm inverse() const {
        std::vector<int> v(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) v[img_[i] - 1] = static_cast<int>(i) + 1;
        return Perm(std::move(v));
    }

    // Cycles listed by minimum element, each starting at its minimum.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(img_.size(), false);
        for (int i = 1; i <= n(); ++i) {
            if (seen[i - 1]) continue;
            std::vector<int> c;
            for (int k = i; !seen[k - 1]; k = img_[k - 1]) {
                seen[k - 1] = true;
                c.push_back(k);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    int cycle_count() const {
        int c = 0;
        std::uint32_t seen = 0;
        for (int i = 0; i < n(); ++i) {
            if (seen >> i & 1u) continue;
            ++c;
            for (int k = i; !(seen >> k & 1u); k = img_[k] - 1) seen |= 1u << k;
        }
        return c;
    }

    std::vector<int> cycle_sizes() const {
        std::vector<int> out;
        for (const auto& c : cycles()) out.push_back(static_cast<int>(c.size()));
        return out;
    }

    SetPartition to_partition() const {
        std::vector<int> lab(img_.size());
        int b = 0;
        for (const auto& c : cycles()) {
            for (int k : c) lab[k - 1] = b;
            ++b;
        }
        return SetPartition::from_labels(lab);
    }

    std::string str() const {
        std::ostringstream os;
        for (const auto& c : cycles()) {
            os << '(';
            for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
            os << ')';
        }
        return os.str();
    }

    friend Perm operator*(const Perm& a, const Perm& b) {
        require(a.n() == b.n(), "permutation dimension mismatch");
        std::vector<int> v(a.img_.size());
        for (int k = 1; k <= a.n(); ++k) v[k - 1] = a(b(k));
        return Perm(std::move(v));
    }
    friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

private:
    std::vector<int> img_;
};

// ---------------------------------------------------------------------------
// Enumeration

// Visits every partition of [n] in restricted-growth-string order.
inline void for_each_partition(int n, const std::function<void(const SetPartition&)>& f) {
    require_size(n >= 1 && n <= 12, "enum_partitions supports 1 <= n <= 12");
    std::vector<int> lab(n, 0);
    std::function<void(int, int)> rec = [&](int i, int maxlab) {
        if (i == n) {
            f(SetPartition::from_labels(lab));
            return;
        }
        for (int b = 0; b <= maxlab + 1; ++b) {
            lab[i] = b;
            rec(i + 1, std::max(maxlab, b));
        }
    };
    lab[0] = 0;
    rec(1, 0);
}

inline std::vector<SetPartition> enum_partitions(int n) {
    std::vector<SetPartition> out;
    for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

// Visits NC(n) in restricted-growth-string order. A stack holds the blocks that
// may still receive elements; joining block b closes every block above it.
inline void for_each_noncrossing(int n, const std::function<void(const SetPartition&)>& f) {
    require_size(n >= 1 && n <= 14, "enum_noncrossing supports 1 <= n <= 14");
    std::vector<int> lab(n, 0);
    std::function<void(int, int, std::vector<int>&)> rec = [&](int i, int nblocks,
                                                               std::vector<int>& stack) {
        if (i == n) {
            f(SetPartition::from_labels(lab));
            return;
        }
        std::vector<int> open = stack;
        std::sort(open.begin(), open.end());
        for (int b : open) {
            std::vector<int> st = stack;
            while (st.back() != b) st.pop_back();
            lab[i] = b;
            rec(i + 1, nblocks, st);
        }
        std::vector<int> st = stack;
        st.push_back(nblocks);
        lab[i] = nblocks;
        rec(i + 1, nblocks + 1, st);
    };
    std::vector<int> stack{0};
    rec(1, 1, stack);
}

inline std::vector<SetPartition> enum_noncrossing(int n) {
    std::vector<SetPartition> out;
    for_each_noncrossing(n, [&](const SetPartition& p) { out.push_back(p); });
    return out;
}

// ---------------------------------------------------------------------------
// Lattice operations

inline bool is_noncrossing(const SetPartition& p) {
    const int n = p.n();
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            if (p.label(b) == p.label(a)) continue;
            for (int c = b + 1; c <= n; ++c) {
                if (p.label(c) != p.label(a)) continue;
                for (int d = c + 1; d <= n; ++d)
                    if (p.label(d) == p.label(b)) return false;
            }
        }
    return true;
}

// pi <= theta: every block of pi lies inside a block of theta.
inline bool refines(const SetPartition& pi, const SetPartition& theta) {
    require(pi.n() == theta.n(), "partition dimension mismatch");
    std::vector<int> image(pi.size(), -1);
    for (int i = 1; i <= pi.n(); ++i) {
        int& t = image[pi.label(i)];
        if (t < 0) t = theta.label(i);
        else if (t != theta.label(i)) return false;
    }
    return true;
}

inline SetPartition join(const SetPartition& a, const SetPartition& b) {
    require(a.n() == b.n(), "partition dimension mismatch");
    const int n = a.n();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<int> first_a(a.size(), -1), first_b(b.size(), -1);
    for (int i = 0; i < n; ++i) {
        for (auto [first, lab] : {std::pair{&first_a, a.label(i + 1)}, std::pair{&first_b, b.label(i + 1)}}) {
            int& f = (*first)[lab];
            if (f < 0) f = i;
            else parent[find(i)] = find(f);
        }
    }
    std::vector<int> lab(n);
    for (int i = 0; i < n; ++i) lab[i] = find(i);
    return SetPartition::from_labels(lab);
}

// Moebius function of P(n): [pi, theta] is a product of full partition lattices,
// one per block of theta, of rank (number of pi-blocks inside) - 1.
inline Integer mobius_partition(const SetPartition& pi, const SetPartition& theta) {
    if (!refines(pi, theta)) throw ContractError("mobius_partition requires pi <= theta");
    std::vector<int> inside(theta.size(), 0);
    std::vector<bool> seen(pi.size(), false);
    for (int i = 1; i <= pi.n(); ++i)
        if (!seen[pi.label(i)]) {
            seen[pi.label(i)] = true;
            ++inside[theta.label(i)];
        }
    Integer r = 1;
    for (int k : inside) r *= ((k - 1) % 2 ? -1 : 1) * factorial(k - 1);
    return r;
}

// Moebius(0_n, pi) on NC(n).
inline Integer mobius_nc_from_bottom(const SetPartition& pi) {
    Integer r = ((pi.n() - pi.size()) % 2) ? -1 : 1;
    for (int k : pi.block_sizes()) r *= catalan(k - 1);
    return r;
}

inline SetPartition kreweras(const SetPartition& pi) {
    require(is_noncrossing(pi), "kreweras requires a non-crossing partition");
    return (Perm::from_partition(pi).inverse() * Perm::gamma(pi.n())).to_partition();
}

// Inverse of kreweras on NC(n): Kr(sigma) = sigma^{-1} gamma, so sigma = gamma Kr^{-1}.
inline SetPartition kreweras_inverse(const SetPartition& tau) {
    require(is_noncrossing(tau), "kreweras_inverse requires a non-crossing partition");
    return (Perm::gamma(tau.n()) * Perm::from_partition(tau).inverse()).to_partition();
}

// Moebius(pi, 1_n) on NC(n), through the anti-isomorphism [pi,1_n] ~ [0_n, Kr(pi)].
inline Integer mobius_nc_to_top(const SetPartition& pi) { return mobius_nc_from_bottom(kreweras(pi)); }

namespace detail {

template <class V>
struct OnceCache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const V>> slots;

    template <class Make>
    const V& get(int key, Make make) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = slots.find(key);
        if (it == slots.end()) it = slots.emplace(key, std::make_shared<const V>(make())).first;
        return *it->second;
    }
};

}  // namespace detail

// Cached NC(n) for the sums used by the transforms.
inline const std::vector<SetPartition>& noncrossing_cached(int n) {
    require_size(n >= 1 && n <= 12, "cached non-crossing enumeration supports n <= 12");
    static detail::OnceCache<std::vector<SetPartition>> cache;
    return cache.get(n, [n] { return enum_noncrossing(n); });
}

inline const std::vector<SetPartition>& partitions_cached(int n) {
    require_size(n >= 1 && n <= 10, "cached partition enumeration supports n <= 10");
    static detail::OnceCache<std::vector<SetPartition>> cache;
    return cache.get(n, [n] { return enum_partitions(n); });
}

// Moebius on NC(n) for a general interval, from the defining relation
// sum_{pi <= sigma <= theta} Moeb(sigma, theta) = [pi = theta].
inline Integer mobius_nc(const SetPartition& pi, const SetPartition& theta) {
    require(pi.n() == theta.n(), "partition dimension mismatch");
    require(is_noncrossing(pi) && is_noncrossing(theta), "mobius_nc requires non-crossing partitions");
    if (!refines(pi, theta)) throw ContractError("mobius_nc requires pi <= theta");
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, Integer> memo;
    const auto& nc = noncrossing_cached(pi.n());
    std::function<Integer(const SetPartition&)> rec = [&](const SetPartition& p) -> Integer {
        if (p == theta) return 1;
        auto key = std::make_pair(p.key(), theta.key());
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        Integer acc = 0;
        for (const auto& s : nc)
            if (!(s == p) && refines(p, s) && refines(s, theta)) acc -= rec(s);
        std::lock_guard<std::mutex> lock(mu);
        memo.emplace(key, acc);
        return acc;
    };
    return rec(pi);
}

// ---------------------------------------------------------------------------
// Annular non-crossing permutations

inline Perm kreweras_annular(const Perm& sigma, int t, int s) {
    require(t >= 1 && s >= 1 && sigma.n() == t + s, "kreweras_annular dimension mismatch");
    return sigma.inverse() * Perm::gamma(t, s);
}

namespace detail {

inline std::string& annular_cache_dir() {
    static std::string dir;
    return dir;
}

inline std::vector<Perm> enum_annular_bruteforce(int t, int s) {
    const int n = t + s;
    const Perm g = Perm::gamma(t, s);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Perm> out;
    do {
        bool connects = false;
        for (int i = 0; i < t && !connects; ++i) connects = v[i] > t;
        if (!connects) continue;
        // |sigma^{-1} gamma| computed without building Perm objects.
        std::array<int, 16> inv{};
        for (int i = 0; i < n; ++i) inv[v[i] - 1] = i + 1;
        int cyc = 0, cyc2 = 0;
        std::uint32_t seen = 0, seen2 = 0;
        for (int i = 0; i < n; ++i) {
            if (!(seen >> i & 1u)) {
                ++cyc;
                for (int k = i; !(seen >> k & 1u); k = v[k] - 1) seen |= 1u << k;
            }
            if (!(seen2 >> i & 1u)) {
                ++cyc2;
                for (int k = i; !(seen2 >> k & 1u); k = inv[g(k + 1) - 1] - 1) seen2 |= 1u << k;
            }
        }
        if (cyc + cyc2 == n) out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

inline bool load_annular(const std::string& path, int n, std::vector<Perm>& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    std::vector<Perm> perms;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> v;
        int x;
        while (ls >> x) v.push_back(x);
        if (static_cast<int>(v.size()) != n) return false;
        try {
            perms.emplace_back(v);
        } catch (const ContractError&) {
            return false;
        }
    }
    out = std::move(perms);
    return true;
}

}  // namespace detail

// Directory used to persist annular enumerations across processes; empty disables.
inline void set_annular_cache_dir(const std::string& dir) { detail::annular_cache_dir() = dir; }

// S_NC(t,s): sigma in S_{t+s} with <sigma, gamma_{t,s}> transitive and
// |sigma| + |sigma^{-1} gamma_{t,s}| = t+s. Brute force over S_{t+s}, memoized.
inline const std::vector<Perm>& enum_annular(int t, int s) {
    require(t >= 1 && s >= 1, "enum_annular requires t, s >= 1");
    require_size(t + s <= 10, "enum_annular supports t+s <= 10");
    static detail::OnceCache<std::vector<Perm>> cache;
    return cache.get(t * 16 + s, [t, s] {
        const std::string& dir = detail::annular_cache_dir();
        std::string path;
        std::vector<Perm> out;
        if (!dir.empty()) {
            path = dir + "/annular_" + std::to_string(t) + "_" + std::to_string(s) + ".txt";
            if (detail::load_annular(path, t + s, out)) return out;
        }
        out = detail::enum_annular_bruteforce(t, s);
        if (!path.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            std::ofstream os(path);
            for (const auto& p : out) {
                for (int i = 0; i < p.n(); ++i) os << (i ? " " : "") << p.images()[i];
                os << '\n';
            }
        }
        return out;
    });
}

// One entry per sigma in S_NC(t,s): cycle sizes of sigma and of Kr_{t,s}(sigma).
struct AnnularTerm {
    std::vector<int> sigma_sizes;
    std::vector<int> kreweras_sizes;
};

inline const std::vector<AnnularTerm>& annular_table(int t, int s) {
    static detail::OnceCache<std::vector<AnnularTerm>> cache;
    return cache.get(t * 16 + s, [t, s] {
        std::vector<AnnularTerm> out;
        for (const auto& p : enum_annular(t, s))
            out.push_back({p.cycle_sizes(), kreweras_annular(p, t, s).cycle_sizes()});
        return out;
    });
}

// One entry per pi in NC(n): block sizes of pi and Kr(pi), and Moeb(pi, 1_n).
struct NCTerm {
    std::vector<int> sizes;
    std::vector<int> kreweras_sizes;
    Integer mobius_to_top;
};

inline const std::vector<NCTerm>& nc_table(int n) {
    require_size(n >= 1 && n <= 12, "non-crossing sums support n <= 12");
    static detail::OnceCache<std::vector<NCTerm>> cache;
    return cache.get(n, [n] {
        std::vector<NCTerm> out;
        for (const auto& p : noncrossing_cached(n)) {
            SetPartition k = kreweras(p);
            out.push_back({p.block_sizes(), k.block_sizes(), mobius_nc_from_bottom(k)});
        }
        return out;
    });
}

// ---------------------------------------------------------------------------
// Cyclic interval partitions

inline bool is_cyclic_interval_partition(const SetPartition& p) {
    const int n = p.n();
    for (const auto& b : p.blocks()) {
        // A cyclic interval has at most one element whose cyclic predecessor is outside it.
        int starts = 0;
        for (int x : b) {
            int prev = x == 1 ? n : x - 1;
            if (p.label(prev) != p.label(x)) ++starts;
        }
        if (starts > 1) return false;
    }
    return true;
}

// Images of the bijection S -> Kr^{-1}(S u 0_{[n]\S}) over nonempty S, listed by
// the bitmask of S (bit i-1 set iff i in S). Repeats are kept: every singleton S
// maps to 1_n.
inline std::vector<SetPartition> enum_cyclic_intervals(int n) {
    require_size(n >= 1 && n <= 12, "enum_cyclic_intervals supports n <= 12");
    std::vector<SetPartition> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> lab(n);
        for (int i = 0; i < n; ++i) lab[i] = (mask >> i & 1u) ? n : i;
        out.push_back(kreweras_inverse(SetPartition::from_labels(lab)));
    }
    return out;
}

inline std::vector<SetPartition> distinct_cyclic_interval_partitions(int n) {
    auto all = enum_cyclic_intervals(n);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// ---------------------------------------------------------------------------
// Block-type aggregation for sums over P(n) whose summand depends only on the
// multiset of block sizes.

// Integer partitions of n, parts in non-increasing order.
inline std::vector<std::vector<int>> integer_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(left, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// Number of set partitions of [n] with the given block sizes.
inline Integer partitions_of_type(const std::vector<int>& sizes) {
    int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    Integer r = factorial(n);
    std::map<int, int> mult;
    for (int k : sizes) {
        r /= factorial(k);
        ++mult[k];
    }
    for (auto [k, m] : mult) r /= factorial(m);
    return r;
}

inline std::vector<int> sorted_type(std::vector<int> sizes) {
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return sizes;
}

// Moeb(0_n, pi) on P(n) from the block sizes of pi.
inline Integer mobius_partition_from_bottom(const std::vector<int>& sizes) {
    Integer r = 1;
    for (int k : sizes) r *= ((k - 1) % 2 ? -1 : 1) * factorial(k - 1);
    return r;
}

// Pairs (pi, theta) in P(n)^2 with pi v theta = 1_n, grouped by the block
// types of pi and theta. count is the number of such pairs of each type.
struct JoinedPairClass {
    std::vector<int> pi_sizes;
    std::vector<int> theta_sizes;
    Integer count;
};

inline const std::vector<JoinedPairClass>& joined_pair_classes(int n) {
    require_size(n >= 1 && n <= 9, "joined partition pair sums support n <= 9");
    static detail::OnceCache<std::vector<JoinedPairClass>> cache;
    return cache.get(n, [n] {
        const auto& all = partitions_cached(n);
        const SetPartition top = SetPartition::one(n);
        std::map<std::pair<std::vector<int>, std::vector<int>>, Integer> acc;
        for (const auto& type : integer_partitions(n)) {
            // Representative of the type: consecutive runs.
            std::vector<int> lab;
            for (std::size_t b = 0; b < type.size(); ++b) lab.insert(lab.end(), type[b], static_cast<int>(b));
            SetPartition rep = SetPartition::from_labels(lab);
            Integer weight = partitions_of_type(type);
            std::map<std::vector<int>, Integer> local;
            for (const auto& th : all)
                if (join(rep, th) == top) local[sorted_type(th.block_sizes())] += 1;
            for (auto& [tt, c] : local) acc[{type, tt}] += c * weight;
        }
        std::vector<JoinedPairClass> out;
        for (auto& [k, c] : acc) out.push_back({k.first, k.second, c});
        return out;
    });
}

}  // namespace ffinf
