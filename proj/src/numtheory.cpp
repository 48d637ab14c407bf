#include "jacpair/numtheory.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jacpair {

int jacobi(Int a, Int n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int m8 = n % 8;
            if (m8 == 3 || m8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a = mod(a, n);
    }
    return n == 1 ? result : 0;
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& base) {
    // returns true when `base` witnesses compositeness
    Int d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    Int x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    static const Int two_64 = pow_int(2, 64);
    if (n < two_64) {
        // deterministic witness set for the 64-bit range
        for (int base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
            if (miller_rabin_witness(n, base)) return false;
        return true;
    }
    std::mt19937_64 rng(0x6a61637061697233ULL);
    for (int round = 0; round < 64; ++round) {
        Int base = 2 + mod(Int(rng()) * Int(rng()), n - 3);
        if (miller_rabin_witness(n, base)) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<char> sieve(bound + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (std::uint64_t i = 2; i * i <= bound; ++i)
        if (sieve[i])
            for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = 0;
    for (std::uint64_t i = 2; i <= bound; ++i)
        if (sieve[i]) out.push_back(i);
    return out;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's cycle variant; n composite, odd, no small factors.
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto step = [&](const Int& v) { return mod(v * v + c, n); };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
    std::map<Int, unsigned> acc;
    for (Int p = 2; p * p <= n && p < 100000; p == 2 ? p = 3 : p += 2)
        while (n % p == 0) {
            ++acc[p];
            n /= p;
        }
    factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

bool NonresidueCertificate::valid() const {
    return is_prime(q) && q % 4 == 3 && jacobi(q, p) == -1 && q * q < 4 * pow_int(p, r) &&
           a > 0 && a < q && mod(a * (q - a) - pow_int(p, r), q) == 0;
}

namespace {

// Smallest prime q in the residue class (3 or 1 mod 4) with (q/p) = -1 and q^2 < 4 p^r.
std::optional<Int> find_nonresidue_prime_in_class(const Int& p, unsigned r, int cls_mod4) {
    Int bound_sq = 4 * pow_int(p, r);
    for (Int q = 2;; ++q) {
        if (q * q >= bound_sq) return std::nullopt;
        if (q % 4 != cls_mod4 || !is_prime(q)) continue;
        if (q != p && jacobi(q, p) == -1) return q;
    }
}

} // namespace

std::optional<Int> find_nonresidue_prime(const Int& p, unsigned r) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("find_nonresidue_prime: p must be an odd prime");
    if (r < 1) throw std::invalid_argument("find_nonresidue_prime: r must be >= 1");
    return find_nonresidue_prime_in_class(p, r, 3);
}

std::optional<Int> sqrt_mod(const Int& a_in, const Int& q) {
    Int a = mod(a_in, q);
    if (a == 0) return Int(0);
    if (jacobi(a, q) != 1) return std::nullopt;
    if (q % 4 == 3) return pow_mod(a, (q + 1) / 4, q);
    // Tonelli-Shanks
    Int s = q - 1;
    unsigned e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    Int nonres = 2;
    while (jacobi(nonres, q) != -1) ++nonres;
    Int x = pow_mod(a, (s + 1) / 2, q);
    Int b = pow_mod(a, s, q);
    Int g = pow_mod(nonres, s, q);
    unsigned rexp = e;
    for (;;) {
        Int t = b;
        unsigned m = 0;
        while (t != 1) {
            t = t * t % q;
            ++m;
        }
        if (m == 0) return x;
        Int gs = pow_mod(g, pow_int(2, rexp - m - 1), q);
        x = x * gs % q;
        g = gs * gs % q;
        b = b * g % q;
        rexp = m;
    }
}

Int split_prime(const Int& q, const Int& k) {
    if (!is_prime(q) || q < 3) throw std::invalid_argument("split_prime: q must be an odd prime");
    if (mod(k, q) == 0) throw std::invalid_argument("split_prime: k must be nonzero mod q");
    if (jacobi(k, q) != jacobi(-1, q))
        throw std::invalid_argument("split_prime: requires Legendre(k|q) = Legendre(-1|q)");
    // a(q-a) = -a^2 = k (mod q)
    auto root = sqrt_mod(mod(-k, q), q);
    if (!root) throw DomainError(ErrorKind::Internal, "split_prime: -k unexpectedly has no square root");
    Int a = *root;
    Int other = q - a;
    return a < other ? a : other;
}

namespace {

STuple q_route_tuple(const Int& p, unsigned r, const Int& bound_multiplier,
                     NonresidueCertificate* cert_out) {
    // For odd r quadratic reciprocity needs q = 3 (mod 4); for even r the
    // split identity needs (p^r/q) = (-1/q) = +1, hence q = 1 (mod 4).
    int cls = (r % 2 == 1) ? 3 : 1;
    Int pr = pow_int(p, r);
    Int bound_sq = bound_multiplier * bound_multiplier * 4 * pr;
    for (Int q = 2;; ++q) {
        if (q * q >= bound_sq)
            throw DomainError(ErrorKind::NoWitness,
                              "no nonresidue prime q = " + std::to_string(cls) +
                                  " (mod 4) below 2*" + p.str() + "^" + std::to_string(r) +
                                  "/2 for p = " + p.str() + ", r = " + std::to_string(r));
        if (q % 4 != cls || !is_prime(q) || q == p || jacobi(q, p) != -1) continue;
        Int a = split_prime(q, mod(pr, q));
        if (mod(a, p) == 0 || mod(q - a, p) == 0) continue; // tuple would share a factor with p
        Int s3 = (pr - a * (q - a)) / q;
        if (s3 < 1) continue;
        if (cert_out && cls == 3) *cert_out = {p, r, q, a};
        return STuple({a, q - a, s3});
    }
}

} // namespace

STuple nonresidue_tuple(const Int& p, unsigned r, const Int& q_bound_multiplier) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("nonresidue_tuple: p must be an odd prime");
    if (r < 1) throw std::invalid_argument("nonresidue_tuple: r must be >= 1");
    if (q_bound_multiplier < 1) throw std::invalid_argument("nonresidue_tuple: bound multiplier must be >= 1");
    Int pr = pow_int(p, r);
    STuple s({Int(1), Int(1)});
    if (p % 4 == 3) {
        s = STuple({Int(1), pr - 1});
    } else if (p % 8 == 5) {
        s = STuple({Int(1), Int(1), (pr - 1) / 2});
    } else if (p % 3 == 2) {
        // p = 1 (mod 4) here; -3 is a nonresidue exactly when p = 2 (mod 3)
        if (r % 2 == 0)
            s = STuple({Int(1), Int(1), Int(1), (pr - 1) / 3});
        else
            s = STuple({Int(1), Int(2), (pr - 2) / 3});
    } else {
        s = q_route_tuple(p, r, q_bound_multiplier, nullptr);
    }
    if (s.complementary_sum() != pr || jacobi(s.product(), p) != -1)
        throw DomainError(ErrorKind::Internal, "nonresidue_tuple: constructed tuple failed its postconditions");
    for (const Int& si : s.parts)
        if (gcd(si, p) != 1)
            throw DomainError(ErrorKind::Internal, "nonresidue_tuple: tuple part shares a factor with p");
    return s;
}

std::optional<NonresidueCertificate> nonresidue_certificate(const Int& p, unsigned r) {
    if (p % 4 == 3 || p % 8 == 5 || p % 3 == 2 || r % 2 == 0) return std::nullopt;
    NonresidueCertificate cert;
    q_route_tuple(p, r, 1, &cert);
    return cert;
}

STuple two_group_tuple(unsigned r) {
    if (r < 3) throw std::invalid_argument("two_group_tuple: the 5 and -5 (mod 8) classes require r >= 3");
    Int pr = pow_int(2, r);
    if (r % 2 == 1) return STuple({Int(1), Int(2), (pr - 2) / 3});
    return STuple({Int(1), Int(1), Int(1), (pr - 1) / 3});
}

// q / sqrt(p) to six decimal places, from the exact square q^2/p.
std::string ratio_decimal(const Rat& ratio_sq) {
    Int scaled_num = num(ratio_sq) * pow_int(10, 12);
    Int v = scaled_num / den(ratio_sq);
    Int root = boost::multiprecision::sqrt(v);
    if ((root + 1) * (root + 1) <= v) ++root;
    std::string digits = root.str();
    while (digits.size() < 7) digits.insert(digits.begin(), '0');
    return digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
}

std::string QRangeReport::summary() const {
    std::ostringstream out;
    out << "checked=" << checked << " failures=" << failures.size() << " max_q=" << max_q
        << " max_ratio=" << (checked ? ratio_decimal(max_ratio_sq) : "0.000000");
    return out.str();
}

QRangeReport verify_q_range(std::uint64_t bound, bool only_1_mod_24, bool emit_certificates,
                            unsigned jobs) {
    if (bound < 3) throw std::invalid_argument("verify_q_range: bound must be >= 3");
    std::vector<std::uint64_t> ps;
    for (std::uint64_t pu : primes_up_to(bound)) {
        if (pu == 2) continue;
        if (only_1_mod_24 && pu % 24 != 1) continue;
        ps.push_back(pu);
    }

    auto scan = [emit_certificates, &ps](std::size_t begin, std::size_t step) {
        QRangeReport report;
        for (std::size_t i = begin; i < ps.size(); i += step) {
            Int p = ps[i];
            ++report.checked;
            auto q = find_nonresidue_prime(p, 1);
            if (!q) {
                report.failures.push_back(ps[i]);
                continue;
            }
            Rat ratio_sq(*q * *q, p);
            if (ratio_sq > report.max_ratio_sq) report.max_ratio_sq = ratio_sq;
            if (*q > report.max_q) report.max_q = *q;
            if (emit_certificates && jacobi(p, *q) == jacobi(-1, *q)) {
                // the split identity a(q-a) = p (mod q) needs matching Legendre
                // symbols, which reciprocity guarantees only for p = 1 (mod 4)
                Int a = split_prime(*q, mod(p, *q));
                report.certificates.push_back({p, 1, *q, a});
            }
        }
        return report;
    };

    if (jobs <= 1) return scan(0, 1);

    std::vector<QRangeReport> partial(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&partial, &scan, w, jobs] { partial[w] = scan(w, jobs); });
    for (std::thread& t : workers) t.join();

    QRangeReport report;
    for (const QRangeReport& part : partial) {
        report.checked += part.checked;
        report.failures.insert(report.failures.end(), part.failures.begin(), part.failures.end());
        if (part.max_q > report.max_q) report.max_q = part.max_q;
        if (part.max_ratio_sq > report.max_ratio_sq) report.max_ratio_sq = part.max_ratio_sq;
        report.certificates.insert(report.certificates.end(), part.certificates.begin(),
                                   part.certificates.end());
    }
    std::sort(report.failures.begin(), report.failures.end());
    std::sort(report.certificates.begin(), report.certificates.end(),
              [](const NonresidueCertificate& a, const NonresidueCertificate& b) { return a.p < b.p; });
    return report;
}

} // namespace jacpair
