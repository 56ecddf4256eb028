#include "symeq/galois.hpp"

#include "symeq/error.hpp"

namespace symeq {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<int> digits(int value, int p, int m) {
    std::vector<int> out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        out[static_cast<std::size_t>(i)] = value % p;
        value /= p;
    }
    return out;
}

int from_digits(const std::vector<int>& d, int p) {
    int v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
    return v;
}

// Powers of x modulo the given polynomial; empty if x is not primitive.
std::vector<int> power_table(int p, int m, const std::vector<int>& modulus) {
    int q = 1;
    for (int i = 0; i < m; ++i) q *= p;
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(q - 1));
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    cur[0] = 1;
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    for (int e = 0; e < q - 1; ++e) {
        int v = from_digits(cur, p);
        if (v == 0 || seen[static_cast<std::size_t>(v)]) return {};
        seen[static_cast<std::size_t>(v)] = true;
        table.push_back(v);
        // multiply by x and reduce with x^m = -(c_0 + ... + c_{m-1}x^{m-1})
        int top = cur[static_cast<std::size_t>(m - 1)];
        for (int i = m - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
        cur[0] = 0;
        for (int i = 0; i < m; ++i) {
            int c = cur[static_cast<std::size_t>(i)] - top * modulus[static_cast<std::size_t>(i)];
            cur[static_cast<std::size_t>(i)] = ((c % p) + p) % p;
        }
    }
    return table;
}

}  // namespace

GaloisField::GaloisField(int p, int m, std::vector<int> modulus) : p_(p), m_(m), q_(1) {
    if (!is_prime(p) || m < 1 || static_cast<int>(modulus.size()) != m)
        throw Error(ErrorCode::invalid_argument, "field needs prime p, m >= 1 and m modulus coefficients");
    for (int i = 0; i < m; ++i) {
        if (q_ > 4096 / p) throw Error(ErrorCode::invalid_argument, "field order too large");
        q_ *= p;
    }
    for (int c : modulus)
        if (c < 0 || c >= p) throw Error(ErrorCode::invalid_argument, "modulus coefficient out of range");

    exp_ = power_table(p, m, modulus);
    if (exp_.empty()) throw Error(ErrorCode::invalid_argument, "reduction polynomial is not primitive");
    log_.assign(static_cast<std::size_t>(q_), -1);
    for (int e = 0; e < q_ - 1; ++e) log_[static_cast<std::size_t>(exp_[static_cast<std::size_t>(e)])] = e;

    add_.resize(static_cast<std::size_t>(q_ * q_));
    neg_.resize(static_cast<std::size_t>(q_));
    for (int a = 0; a < q_; ++a) {
        auto da = digits(a, p, m);
        std::vector<int> na(da.size());
        for (std::size_t i = 0; i < da.size(); ++i) na[i] = (p - da[i]) % p;
        neg_[static_cast<std::size_t>(a)] = from_digits(na, p);
        for (int b = 0; b < q_; ++b) {
            auto db = digits(b, p, m);
            for (std::size_t i = 0; i < db.size(); ++i) db[i] = (da[i] + db[i]) % p;
            add_[static_cast<std::size_t>(a * q_ + b)] = from_digits(db, p);
        }
    }
}

GaloisField GaloisField::standard(int order) {
    switch (order) {
        case 2: return GaloisField(2, 1, {1});
        case 4: return GaloisField(2, 2, {1, 1});
        case 8: return GaloisField(2, 3, {1, 1, 0});
        case 16: return GaloisField(2, 4, {1, 1, 0, 0});
        case 32: return GaloisField(2, 5, {1, 0, 1, 0, 0});
        case 64: return GaloisField(2, 6, {1, 1, 0, 0, 0, 0});
        default: break;
    }
    int p = 0, m = 0;
    for (int cand = 3; cand <= order; cand += 2) {
        if (order % cand != 0) continue;
        int v = order, k = 0;
        while (v % cand == 0) {
            v /= cand;
            ++k;
        }
        if (v == 1) {
            p = cand;
            m = k;
        }
        break;
    }
    if (p == 0) throw Error(ErrorCode::invalid_argument, "no field of order " + std::to_string(order));
    int total = order;
    for (int code = 0; code < total; ++code) {
        auto coeffs = digits(code, p, m);
        if (coeffs[0] == 0) continue;
        if (!power_table(p, m, coeffs).empty()) return GaloisField(p, m, coeffs);
    }
    throw Error(ErrorCode::invalid_argument, "no primitive polynomial found");
}

int GaloisField::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>((log_[static_cast<std::size_t>(a)] + log_[static_cast<std::size_t>(b)]) % (q_ - 1))];
}

int GaloisField::inv(int a) const {
    if (a == 0) throw Error(ErrorCode::invalid_argument, "zero has no inverse");
    return exp_[static_cast<std::size_t>((q_ - 1 - log_[static_cast<std::size_t>(a)]) % (q_ - 1))];
}

int GaloisField::exp(long long e) const {
    long long r = e % (q_ - 1);
    if (r < 0) r += q_ - 1;
    return exp_[static_cast<std::size_t>(r)];
}

int GaloisField::log(int a) const {
    if (a <= 0 || a >= q_) throw Error(ErrorCode::invalid_argument, "log of zero or out-of-range element");
    return log_[static_cast<std::size_t>(a)];
}

}  // namespace symeq
