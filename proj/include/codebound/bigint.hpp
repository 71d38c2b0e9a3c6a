// Arbitrary-precision signed integers and rationals.
//
// Sized for exact Krawtchouk / Terwilliger coefficient work: numbers of a
// few hundred bits, schoolbook arithmetic throughout.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace codebound {

class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v < 0) {
            negative_ = true;
            // avoid overflow on LLONG_MIN
            unsigned long long m = static_cast<unsigned long long>(-(v + 1)) + 1ull;
            assign_u64(m);
        } else {
            assign_u64(static_cast<unsigned long long>(v));
        }
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned v) : BigInt(static_cast<long long>(v)) {}

    explicit BigInt(const std::string& s) {
        size_t pos = 0;
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = (s[pos] == '-');
            ++pos;
        }
        if (pos == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        BigInt acc;
        for (; pos < s.size(); ++pos) {
            char c = s[pos];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
            acc = acc.mul_small(10);
            acc = acc.add_small(static_cast<uint32_t>(c - '0'));
        }
        limbs_ = std::move(acc.limbs_);
        negative_ = neg && !is_zero();
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.negative_ = false;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.negative_ == b.negative_) {
            BigInt r;
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_ && !r.limbs_.empty();
            return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        BigInt r;
        if (c > 0) {
            r.limbs_ = sub_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_;
        } else {
            r.limbs_ = sub_mag(b.limbs_, a.limbs_);
            r.negative_ = b.negative_;
        }
        if (r.limbs_.empty()) r.negative_ = false;
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a.limbs_[i];
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                uint64_t prod = ai * static_cast<uint64_t>(b.limbs_[j]);
                uint64_t cur = static_cast<uint64_t>(r.limbs_[i + j]) + (prod & 0xffffffffull) +
                               (carry & 0xffffffffull);
                uint64_t hi = (prod >> 32) + (carry >> 32) + (cur >> 32);
                r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffull);
                carry = hi;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                uint64_t cur = static_cast<uint64_t>(r.limbs_[k]) + (carry & 0xffffffffull);
                r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffull);
                carry = (carry >> 32) + (cur >> 32);
                ++k;
            }
        }
        r.trim();
        r.negative_ = (a.negative_ != b.negative_) && !r.limbs_.empty();
        return r;
    }

    // Truncated division: q = trunc(a/b), r = a - q*b (r has the sign of a).
    friend void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.limbs_, b.limbs_, qm, rm);
        q.limbs_ = std::move(qm);
        r.limbs_ = std::move(rm);
        q.negative_ = (a.negative_ != b.negative_) && !q.limbs_.empty();
        r.negative_ = a.negative_ && !r.limbs_.empty();
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.negative_ != b.negative_) return a.negative_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.negative_ ? c > 0 : c < 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    static BigInt gcd(BigInt a, BigInt b) {
        a.negative_ = false;
        b.negative_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<uint32_t> chunks;  // base 1e9, little endian
        std::vector<uint32_t> cur = limbs_;
        while (!cur.empty()) {
            uint64_t rem = 0;
            for (size_t i = cur.size(); i-- > 0;) {
                uint64_t v = (rem << 32) | cur[i];
                cur[i] = static_cast<uint32_t>(v / 1000000000ull);
                rem = v % 1000000000ull;
            }
            while (!cur.empty() && cur.back() == 0) cur.pop_back();
            chunks.push_back(static_cast<uint32_t>(rem));
        }
        std::string out = negative_ ? "-" : "";
        out += std::to_string(chunks.back());
        for (size_t i = chunks.size() - 1; i-- > 0;) {
            std::string part = std::to_string(chunks[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        double v = 0.0;
        // top three limbs carry all double precision
        size_t n = limbs_.size();
        size_t take = n < 3 ? n : 3;
        for (size_t i = 0; i < take; ++i)
            v = v * 4294967296.0 + static_cast<double>(limbs_[n - 1 - i]);
        v = std::ldexp(v, 32 * static_cast<int>(n - take));
        return negative_ ? -v : v;
    }

    // Exact conversion when the value fits; throws otherwise.
    long long to_int64() const {
        if (limbs_.size() > 2) throw std::overflow_error("BigInt: does not fit int64");
        unsigned long long m = 0;
        for (size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
        if (!negative_ && m > static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
            throw std::overflow_error("BigInt: does not fit int64");
        if (negative_ && m > static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1ull)
            throw std::overflow_error("BigInt: does not fit int64");
        return negative_ ? -static_cast<long long>(m - 1) - 1 : static_cast<long long>(m);
    }

    bool even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

private:
    static constexpr uint64_t kBase = 1ull << 32;
    std::vector<uint32_t> limbs_;  // little endian, no trailing zeros
    bool negative_ = false;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) negative_ = false;
    }

    void assign_u64(unsigned long long m) {
        limbs_.clear();
        while (m) {
            limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffull));
            m >>= 32;
        }
    }

    BigInt mul_small(uint32_t f) const {
        BigInt r;
        uint64_t carry = 0;
        for (uint32_t limb : limbs_) {
            uint64_t cur = static_cast<uint64_t>(limb) * f + carry;
            r.limbs_.push_back(static_cast<uint32_t>(cur & 0xffffffffull));
            carry = cur >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
        r.negative_ = negative_;
        r.trim();
        return r;
    }

    BigInt add_small(uint32_t v) const {
        return *this + BigInt(static_cast<long long>(v));
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const std::vector<uint32_t>& lo = a.size() < b.size() ? a : b;
        const std::vector<uint32_t>& hi = a.size() < b.size() ? b : a;
        std::vector<uint32_t> r;
        r.reserve(hi.size() + 1);
        uint64_t carry = 0;
        for (size_t i = 0; i < hi.size(); ++i) {
            uint64_t cur = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
            r.push_back(static_cast<uint32_t>(cur & 0xffffffffull));
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r;
        r.reserve(a.size());
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
            if (cur < 0) {
                cur += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r.push_back(static_cast<uint32_t>(cur));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on magnitudes.
    static void divmod_mag(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        q.clear();
        r.clear();
        if (cmp_mag(u, v) < 0) {
            r = u;
            return;
        }
        size_t n = v.size(), m = u.size();
        if (n == 1) {
            uint64_t d = v[0], rem = 0;
            q.assign(m, 0);
            for (size_t i = m; i-- > 0;) {
                uint64_t cur = (rem << 32) | u[i];
                q[i] = static_cast<uint32_t>(cur / d);
                rem = cur % d;
            }
            while (!q.empty() && q.back() == 0) q.pop_back();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        int s = 0;
        {
            uint32_t top = v[n - 1];
            while (!(top & 0x80000000u)) {
                top <<= 1;
                ++s;
            }
        }
        auto shl = [&](const std::vector<uint32_t>& x, size_t extra) {
            std::vector<uint32_t> y(x.size() + extra, 0);
            if (s == 0) {
                for (size_t i = 0; i < x.size(); ++i) y[i] = x[i];
            } else {
                uint32_t carry = 0;
                for (size_t i = 0; i < x.size(); ++i) {
                    y[i] = (x[i] << s) | carry;
                    carry = static_cast<uint32_t>(static_cast<uint64_t>(x[i]) >> (32 - s));
                }
                if (carry) y[x.size()] = carry;
            }
            return y;
        };
        std::vector<uint32_t> un = shl(u, 1);
        std::vector<uint32_t> vn = shl(v, 0);
        if (vn.size() > n) vn.resize(n);  // top shift cannot overflow: top bit was set after shift within limb
        q.assign(m - n + 1, 0);
        for (size_t j = m - n + 1; j-- > 0;) {
            uint64_t num = (static_cast<uint64_t>(un[j + n]) << 32) | un[j + n - 1];
            uint64_t qhat = num / vn[n - 1];
            uint64_t rhat = num % vn[n - 1];
            while (qhat >= kBase ||
                   qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
                --qhat;
                rhat += vn[n - 1];
                if (rhat >= kBase) break;
            }
            // multiply and subtract
            int64_t borrow = 0;
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t p = qhat * vn[i] + carry;
                carry = p >> 32;
                int64_t t = static_cast<int64_t>(un[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffull);
                if (t < 0) {
                    t += static_cast<int64_t>(kBase);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                un[i + j] = static_cast<uint32_t>(t);
            }
            int64_t t = static_cast<int64_t>(un[j + n]) - borrow - static_cast<int64_t>(carry);
            if (t < 0) {
                // qhat one too large: add back
                t += static_cast<int64_t>(kBase);
                --qhat;
                uint64_t c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    uint64_t cur = static_cast<uint64_t>(un[i + j]) + vn[i] + c2;
                    un[i + j] = static_cast<uint32_t>(cur & 0xffffffffull);
                    c2 = cur >> 32;
                }
                t += static_cast<int64_t>(c2);
                t &= static_cast<int64_t>(kBase) - 1;
            }
            un[j + n] = static_cast<uint32_t>(t);
            q[j] = static_cast<uint32_t>(qhat);
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        // denormalize remainder
        r.assign(n, 0);
        if (s == 0) {
            for (size_t i = 0; i < n; ++i) r[i] = un[i];
        } else {
            for (size_t i = 0; i < n; ++i) {
                uint64_t hi = (i + 1 < un.size()) ? un[i + 1] : 0;
                r[i] = static_cast<uint32_t>((un[i] >> s) | (hi << (32 - s)));
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
};

// Exact rational with canonical form: positive denominator, reduced, 0 = 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (a.num_ * b.den_) < (b.num_ * a.den_);
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (den_.is_negative()) {
            den_ = -den_;
            num_ = -num_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

}  // namespace codebound
