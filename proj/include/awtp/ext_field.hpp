#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace awtp {

/// The extension field F_{q^m} = F_q[X]/(modulus). Elements are coefficient
/// vectors of length m; the map phi identifying length-m vectors over F_q
/// with field elements is the coefficient-vector identity (index i is the
/// X^i coefficient). When no modulus is given, the lexicographically
/// smallest monic irreducible of degree m is selected, so phi is the same
/// in every run.
class ExtField {
    struct Data {
        PrimeField F;
        std::size_t m;
        poly::Poly modulus;
    };

   public:
    class Element {
       public:
        Element() = default;
        const std::vector<fe>& coeffs() const { return c_; }
        bool operator==(const Element& o) const { return c_ == o.c_; }
        bool operator!=(const Element& o) const { return c_ != o.c_; }
        bool is_zero() const {
            for (const fe x : c_)
                if (x != 0) return false;
            return true;
        }

       private:
        friend class ExtField;
        Element(std::shared_ptr<const Data> ctx, std::vector<fe> c) : ctx_(std::move(ctx)), c_(std::move(c)) {}
        std::shared_ptr<const Data> ctx_;
        std::vector<fe> c_;
    };

    ExtField(const PrimeField& base, std::size_t m)
        : d_(std::make_shared<Data>(Data{base, m, poly::find_irreducible(base, m)})) {}

    ExtField(const PrimeField& base, std::size_t m, poly::Poly modulus) {
        if (poly::degree(modulus) != static_cast<long long>(m) || modulus.back() != 1)
            throw ParamError("extension modulus must be monic of degree m");
        if (!poly::is_irreducible(base, modulus)) throw ParamError("extension modulus is not irreducible");
        d_ = std::make_shared<Data>(Data{base, m, std::move(modulus)});
    }

    const PrimeField& base() const { return d_->F; }
    std::size_t deg() const { return d_->m; }
    const poly::Poly& modulus() const { return d_->modulus; }

    bool same(const ExtField& o) const {
        return d_ == o.d_ || (d_->F == o.d_->F && d_->modulus == o.d_->modulus);
    }

    /// phi: length-m vector over F_q -> field element.
    Element phi(std::span<const fe> v) const {
        if (v.size() != d_->m) throw LengthMismatch("phi expects a vector of length m");
        return Element(d_, std::vector<fe>(v.begin(), v.end()));
    }

    /// phi^{-1}: field element -> its length-m coefficient vector.
    std::vector<fe> phi_inv(const Element& a) const {
        check(a);
        return a.c_;
    }

    Element zero() const { return Element(d_, std::vector<fe>(d_->m, 0)); }

    Element one() const {
        std::vector<fe> c(d_->m, 0);
        if (d_->m > 0) c[0] = 1;
        return Element(d_, std::move(c));
    }

    Element add(const Element& a, const Element& b) const {
        check(a);
        check(b);
        std::vector<fe> c(d_->m);
        for (std::size_t i = 0; i < d_->m; ++i) c[i] = d_->F.add(a.c_[i], b.c_[i]);
        return Element(d_, std::move(c));
    }

    Element sub(const Element& a, const Element& b) const {
        check(a);
        check(b);
        std::vector<fe> c(d_->m);
        for (std::size_t i = 0; i < d_->m; ++i) c[i] = d_->F.sub(a.c_[i], b.c_[i]);
        return Element(d_, std::move(c));
    }

    Element mul(const Element& a, const Element& b) const {
        check(a);
        check(b);
        poly::Poly p = poly::mulmod(d_->F, a.c_, b.c_, d_->modulus);
        p.resize(d_->m, 0);
        return Element(d_, std::move(p));
    }

    Element pow(const Element& a, std::uint64_t e) const {
        check(a);
        Element acc = one();
        Element base = a;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    Element uniform(Rng& rng) const {
        std::vector<fe> c(d_->m);
        for (auto& x : c) x = d_->F.uniform(rng);
        return Element(d_, std::move(c));
    }

   private:
    void check(const Element& a) const {
        if (!a.ctx_) throw ContextMismatch("element has no field context");
        if (a.ctx_ != d_ && !(a.ctx_->F == d_->F && a.ctx_->modulus == d_->modulus))
            throw ContextMismatch("element belongs to a different extension field");
    }

    std::shared_ptr<const Data> d_;
};

}  // namespace awtp
