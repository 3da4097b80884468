#include "gk/lattice.hpp"

#include "gk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace gk {

namespace {

std::int64_t parse_int(std::string_view s, const char* what) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw PreconditionError(what, "cannot parse integer '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == ' '; });
}

}  // namespace

HalfInt HalfInt::from_twice(std::int64_t twice) {
    require(twice % 2 != 0, "half_integer", "2x must be odd, got " + std::to_string(twice));
    return HalfInt(twice);
}

HalfInt HalfInt::parse(std::string_view s) {
    auto slash = s.find('/');
    require(slash != std::string_view::npos, "half_integer", "expected n/2, got '" + std::string(s) + "'");
    auto den = parse_int(s.substr(slash + 1), "half_integer");
    require(den == 2, "half_integer", "denominator must be 2 in '" + std::string(s) + "'");
    return from_twice(parse_int(s.substr(0, slash), "half_integer"));
}

std::string HalfInt::str() const { return std::to_string(twice_) + "/2"; }

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        require(rows_[i] > 0, "partition", "rows must be positive");
        require(i == 0 || rows_[i] <= rows_[i - 1], "partition", "rows must be weakly decreasing");
        size_ += rows_[i];
    }
    auto conj = [&](int j) {  // lambda'_j, 0-based column j
        int c = 0;
        while (c < length() && rows_[c] > j) ++c;
        return c;
    };
    int d = 0;
    while (d < length() && rows_[d] > d) ++d;
    frob_.resize(d);
    for (int i = 0; i < d; ++i) {
        // largest arm sits at i = 0; store ascending
        frob_[d - 1 - i] = {HalfInt::above(rows_[i] - i - 1), HalfInt::above(conj(i) - i - 1)};
    }
}

Partition Partition::parse(std::string_view s) {
    std::vector<int> rows;
    if (!blank(s)) {
        for (auto tok : split(s, ',')) rows.push_back(static_cast<int>(parse_int(tok, "partition")));
    }
    return Partition(std::move(rows));
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    for (int j = 0; j < row(0); ++j) {
        int len = 0;
        while (len < length() && rows_[len] > j) ++len;
        c.push_back(len);
    }
    return Partition(std::move(c));
}

std::string Partition::str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(rows_[i]);
    }
    return s;
}

FiniteConfig::FiniteConfig(std::vector<HalfInt> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    require(std::adjacent_find(pts_.begin(), pts_.end()) == pts_.end(), "distinct_points",
            "configuration points must be distinct");
}

FiniteConfig FiniteConfig::parse(std::string_view s) {
    std::vector<HalfInt> pts;
    if (!blank(s)) {
        for (auto tok : split(s, ',')) {
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            pts.push_back(HalfInt::parse(tok));
        }
    }
    return FiniteConfig(std::move(pts));
}

bool FiniteConfig::contains(HalfInt x) const { return std::binary_search(pts_.begin(), pts_.end(), x); }

bool FiniteConfig::is_balanced() const {
    auto pos = std::count_if(pts_.begin(), pts_.end(), [](HalfInt x) { return x.positive(); });
    return 2 * static_cast<std::size_t>(pos) == pts_.size();
}

std::vector<HalfInt> FiniteConfig::positive_part() const {
    std::vector<HalfInt> out;
    for (auto x : pts_)
        if (x.positive()) out.push_back(x);
    return out;
}

std::vector<HalfInt> FiniteConfig::negative_part() const {
    std::vector<HalfInt> out;
    for (auto x : pts_)
        if (!x.positive()) out.push_back(x);
    return out;
}

FiniteConfig FiniteConfig::symmetric_difference(const FiniteConfig& o) const {
    std::vector<HalfInt> out;
    std::set_symmetric_difference(pts_.begin(), pts_.end(), o.pts_.begin(), o.pts_.end(),
                                  std::back_inserter(out));
    return FiniteConfig(std::move(out));
}

FiniteConfig FiniteConfig::reflected() const {
    std::vector<HalfInt> out;
    for (auto x : pts_) out.push_back(-x);
    return FiniteConfig(std::move(out));
}

std::string FiniteConfig::str() const {
    std::string s;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (i) s += ',';
        s += pts_[i].str();
    }
    return s;
}

FinitaryPermutation FinitaryPermutation::parse(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    require(s.size() >= 2 && s.front() == '[' && s.back() == ']', "word",
            "permutation word must be a JSON array of integers");
    s = s.substr(1, s.size() - 2);
    FinitaryPermutation p;
    if (!blank(s))
        for (auto tok : split(s, ',')) p.word.push_back(static_cast<int>(parse_int(tok, "word")));
    return p;
}

FinitaryPermutation FinitaryPermutation::inverse() const {
    return {std::vector<int>(word.rbegin(), word.rend())};
}

HalfInt FinitaryPermutation::apply(HalfInt x) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        HalfInt lo = HalfInt::above(*it - 1), hi = HalfInt::above(*it);
        if (x == lo)
            x = hi;
        else if (x == hi)
            x = lo;
    }
    return x;
}

int FinitaryPermutation::support_radius() const {
    int r = 0;
    for (int n : word) r = std::max(r, n < 0 ? -n : n);
    return r;
}

std::string FinitaryPermutation::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(word[i]);
    }
    return s + "]";
}

MayaDiagram to_maya(const Partition& lambda) {
    // rows beyond the length contribute lambda_i - i + 1/2 = -i + 1/2 which are
    // exactly the points of Z'_- below -length + 1/2
    std::vector<HalfInt> diff;
    const int l = lambda.length();
    std::set<std::int64_t> occupied;  // twice-values of the first l points
    for (int i = 1; i <= l; ++i) occupied.insert(2 * (lambda.row(i - 1) - i) + 1);
    for (auto t : occupied)
        if (t > 0) diff.push_back(HalfInt::from_twice(t));
    for (int i = 1; i <= l; ++i) {
        std::int64_t t = -2 * i + 1;  // the point -i + 1/2 of Z'_-
        if (!occupied.count(t)) diff.push_back(HalfInt::from_twice(t));
    }
    return MayaDiagram(FiniteConfig(std::move(diff)));
}

Partition from_maya(const MayaDiagram& m) {
    // particles in decreasing order give lambda_i - i + 1/2
    const auto& diff = m.difference().points();
    std::int64_t lowest = 1;
    for (auto x : diff) lowest = std::min(lowest, x.twice());
    std::vector<int> rows;
    int i = 1;
    // scan from the largest particle downward until the tail matches Z'_- exactly
    std::vector<HalfInt> particles;
    std::int64_t top = 1;
    for (auto x : diff) top = std::max(top, x.twice());
    for (std::int64_t t = top; t >= lowest - 2; t -= 2) {
        if (t % 2 == 0) continue;
        HalfInt x = HalfInt::from_twice(t);
        if (m.contains(x)) particles.push_back(x);
    }
    for (auto x : particles) {
        std::int64_t r = (x.twice() - 1) / 2 + i;  // lambda_i = x - 1/2 + i
        if (r > 0) rows.push_back(static_cast<int>(r));
        ++i;
    }
    return Partition(std::move(rows));
}

MayaDiagram particle_hole_involution(const FiniteConfig& x) { return MayaDiagram(x); }

FiniteConfig particle_hole_involution(const MayaDiagram& m) { return m.difference(); }

FiniteConfig to_balanced_config(const Partition& lambda) {
    return particle_hole_involution(to_maya(lambda));
}

Partition from_balanced_config(const FiniteConfig& x) {
    require(x.is_balanced(), "balanced", "configuration " + x.str() + " is not balanced");
    return from_maya(particle_hole_involution(x));
}

MayaDiagram apply_sigma(const FinitaryPermutation& s, const MayaDiagram& m) {
    FiniteConfig diff = m.difference();
    for (auto it = s.word.rbegin(); it != s.word.rend(); ++it) {
        HalfInt lo = HalfInt::above(*it - 1), hi = HalfInt::above(*it);
        MayaDiagram cur(diff);
        if (cur.contains(lo) != cur.contains(hi)) {
            // swapping occupancy of lo and hi toggles both in the difference set
            diff = diff.symmetric_difference(FiniteConfig({lo, hi}));
        }
    }
    return MayaDiagram(diff);
}

Partition apply_sigma(const FinitaryPermutation& s, const Partition& lambda) {
    return from_maya(apply_sigma(s, to_maya(lambda)));
}

FiniteConfig apply_generator_modified(int n, const FiniteConfig& x) {
    FinitaryPermutation g{{n}};
    return particle_hole_involution(apply_sigma(g, particle_hole_involution(x)));
}

FiniteConfig apply_word_modified(const FinitaryPermutation& s, const FiniteConfig& x) {
    return particle_hole_involution(apply_sigma(s, particle_hole_involution(x)));
}

FiniteConfig apply_sigma_modified(const FinitaryPermutation& s, const FiniteConfig& x) {
    require(x.is_balanced(), "balanced", "configuration " + x.str() + " is not balanced");
    return particle_hole_involution(apply_sigma(s, particle_hole_involution(x)));
}

boost::multiprecision::cpp_rational dim_ratio(const Partition& lambda) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    const auto& f = lambda.frobenius();
    const int d = static_cast<int>(f.size());
    // work with integer p - 1/2, q - 1/2 and p_i + q_j = (p_i - 1/2) + (q_j - 1/2) + 1
    std::vector<std::int64_t> a(d), b(d);
    for (int i = 0; i < d; ++i) {
        a[i] = f[i].first.floor_abs();
        b[i] = f[i].second.floor_abs();
    }
    cpp_int num = 1, den = 1;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) num *= cpp_int(a[j] - a[i]) * cpp_int(b[j] - b[i]);
    auto fact = [](std::int64_t n) {
        cpp_int r = 1;
        for (std::int64_t k = 2; k <= n; ++k) r *= k;
        return r;
    };
    for (int i = 0; i < d; ++i) {
        den *= fact(a[i]) * fact(b[i]);
        for (int j = 0; j < d; ++j) den *= cpp_int(a[i] + b[j] + 1);
    }
    return cpp_rational(num, den);
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(remaining, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, remaining - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::vector<FiniteConfig> balanced_configs_in_window(int N) {
    // positive part chosen from {1/2..N-1/2}, negative part of the same size
    std::vector<FiniteConfig> out;
    const int m = N;
    for (unsigned pm = 0; pm < (1u << m); ++pm) {
        for (unsigned nm = 0; nm < (1u << m); ++nm) {
            if (__builtin_popcount(pm) != __builtin_popcount(nm)) continue;
            std::vector<HalfInt> pts;
            for (int k = 0; k < m; ++k) {
                if (pm >> k & 1u) pts.push_back(HalfInt::above(k));
                if (nm >> k & 1u) pts.push_back(-HalfInt::above(k));
            }
            out.emplace_back(std::move(pts));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gk
