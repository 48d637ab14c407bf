#include "jacpair/divisor.hpp"

#include <sstream>
#include <stdexcept>

namespace jacpair {

Int degree(const Divisor& d) {
    Int s = 0;
    for (const Int& x : d) s += x;
    return s;
}

Divisor div_of(const Multigraph& g, const PotentialFunction& f) {
    if (f.size() != g.vertex_count()) throw std::invalid_argument("div_of: length mismatch");
    Divisor d(g.vertex_count(), 0);
    for (const EdgeRecord& e : g.edges()) {
        Int diff = e.mult * (f[e.u] - f[e.v]);
        d[e.u] += diff;
        d[e.v] -= diff;
    }
    return d;
}

namespace {

// Burnt set of Dhar's algorithm for a divisor nonnegative away from base.
std::vector<char> burn(const Multigraph& g, const Divisor& d, std::size_t base) {
    std::size_t n = g.vertex_count();
    std::vector<char> burnt(n, 0);
    burnt[base] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (burnt[v]) continue;
            Int incoming = 0;
            for (const EdgeRecord& e : g.edges()) {
                if (e.u == v && burnt[e.v]) incoming += e.mult;
                if (e.v == v && burnt[e.u]) incoming += e.mult;
            }
            if (incoming > d[v]) {
                burnt[v] = 1;
                changed = true;
            }
        }
    }
    return burnt;
}

} // namespace

bool is_reduced(const Multigraph& g, const Divisor& d, std::size_t base) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (v != base && d[v] < 0) return false;
    std::vector<char> burnt = burn(g, d, base);
    for (char b : burnt)
        if (!b) return false;
    return true;
}

Divisor dhar_reduce(const Multigraph& g, const Divisor& d, std::size_t base) {
    std::size_t n = g.vertex_count();
    if (d.size() != n) throw std::invalid_argument("dhar_reduce: length mismatch");
    if (!g.connected()) throw std::invalid_argument("dhar_reduce: graph must be connected");
    if (base >= n) throw std::invalid_argument("dhar_reduce: base out of range");
    if (n == 1) return d;

    // Shrink entries first: subtract div of floor(L~^{-1} d_restr), which leaves
    // every non-base entry bounded by twice its valence.
    IntMatrix lred = g.reduced_laplacian(base);
    std::vector<Int> restr;
    restr.reserve(n - 1);
    for (std::size_t v = 0; v < n; ++v)
        if (v != base) restr.push_back(d[v]);
    auto y = solve_rational(lred, restr);
    if (!y) throw DomainError(ErrorKind::Internal, "dhar_reduce: singular reduced Laplacian");
    PotentialFunction f(n, 0);
    for (std::size_t v = 0, i = 0; v < n; ++v) {
        if (v == base) continue;
        const Rat& r = (*y)[i++];
        Int q = num(r) / den(r);
        if (num(r) < 0 && q * den(r) != num(r)) --q; // floor for negatives
        f[v] = q;
    }
    Divisor cur = d;
    Divisor shift = div_of(g, f);
    for (std::size_t v = 0; v < n; ++v) cur[v] -= shift[v];

    // Phase 1: borrow at deficit vertices until nonnegative away from base.
    bool any_negative = true;
    std::size_t guard = 0;
    while (any_negative) {
        any_negative = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == base || cur[v] >= 0) continue;
            any_negative = true;
            Int deg = g.valence(v);
            cur[v] += deg;
            for (const EdgeRecord& e : g.edges()) {
                if (e.u == v) cur[e.v] -= e.mult;
                if (e.v == v) cur[e.u] -= e.mult;
            }
        }
        if (++guard > 1000000)
            throw DomainError(ErrorKind::Internal, "dhar_reduce: borrowing did not terminate");
    }

    // Phase 2: fire the unburnt set until the fire consumes the whole graph.
    guard = 0;
    for (;;) {
        std::vector<char> burnt = burn(g, cur, base);
        bool all = true;
        for (char b : burnt)
            if (!b) all = false;
        if (all) break;
        for (const EdgeRecord& e : g.edges()) {
            if (burnt[e.u] == burnt[e.v]) continue;
            if (!burnt[e.u]) {
                cur[e.u] -= e.mult;
                cur[e.v] += e.mult;
            } else {
                cur[e.v] -= e.mult;
                cur[e.u] += e.mult;
            }
        }
        if (++guard > 10000000)
            throw DomainError(ErrorKind::Internal, "dhar_reduce: set-firing did not terminate");
    }
    return cur;
}

bool is_equivalent(const Multigraph& g, const Divisor& d1, const Divisor& d2) {
    if (d1.size() != d2.size()) throw std::invalid_argument("is_equivalent: length mismatch");
    if (degree(d1) != degree(d2)) return false;
    return dhar_reduce(g, d1, 0) == dhar_reduce(g, d2, 0);
}

Int class_order(const Multigraph& g, const Divisor& d) {
    if (d.size() != g.vertex_count()) throw std::invalid_argument("class_order: length mismatch");
    if (degree(d) != 0) throw std::invalid_argument("class_order: divisor must have degree zero");
    if (!g.connected()) throw std::invalid_argument("class_order: graph must be connected");
    if (g.vertex_count() == 1) return 1;
    SnfResult snf = smith_normal_form(g.reduced_laplacian(0));
    std::vector<Int> restr;
    for (std::size_t v = 1; v < g.vertex_count(); ++v) restr.push_back(d[v]);
    std::vector<Int> coords = snf.U * restr;
    Int order = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Int& s = snf.S(i, i);
        order = lcm(order, s / gcd(s, mod(coords[i], s)));
    }
    return order;
}

Divisor parse_divisor(const std::string& text, std::size_t vertex_count) {
    Divisor d(vertex_count, 0);
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t colon = token.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("divisor parse error: expected index:value in \"" + token + "\"");
        long long idx;
        Int value;
        std::istringstream a(token.substr(0, colon)), b(token.substr(colon + 1));
        if (!(a >> idx) || !(b >> value))
            throw std::invalid_argument("divisor parse error: bad entry \"" + token + "\"");
        std::string junk;
        if ((a >> junk) || (b >> junk))
            throw std::invalid_argument("divisor parse error: trailing tokens in \"" + token + "\"");
        if (idx < 0 || static_cast<std::size_t>(idx) >= vertex_count)
            throw std::invalid_argument("divisor parse error: vertex index out of range in \"" + token + "\"");
        d[static_cast<std::size_t>(idx)] += value;
    }
    return d;
}

std::string emit_divisor(const Divisor& d) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        if (!first) out << ',';
        out << i << ':' << d[i];
        first = false;
    }
    return out.str();
}

} // namespace jacpair
