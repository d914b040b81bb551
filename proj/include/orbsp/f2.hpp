#pragma once

#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace orbsp {

using BitVec = boost::dynamic_bitset<>;

// Reduced row echelon basis over F2; reduce() gives a canonical coset representative.
class EchelonF2 {
public:
    explicit EchelonF2(std::size_t n = 0) : n_(n) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }
    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }

    BitVec reduce(BitVec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v.test(piv_[i])) v ^= rows_[i];
        return v;
    }

    bool contains(const BitVec& v) const { return reduce(v).none(); }

    // Returns true if v enlarged the span.
    bool insert(BitVec v) {
        v = reduce(v);
        if (v.none()) return false;
        std::size_t p = v.find_first();
        for (auto& r : rows_)
            if (r.test(p)) r ^= v;
        auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
        piv_.insert(piv_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

private:
    std::size_t n_;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> piv_;
};

// Kernel of the map F2^n -> F2^m given by the images of the unit vectors.
inline std::vector<BitVec> kernel_f2(const std::vector<BitVec>& cols, std::size_t n) {
    // Gaussian elimination on the augmented vectors [image | unit].
    const std::size_t m = cols.empty() ? 0 : cols[0].size();
    std::vector<BitVec> aug;
    for (std::size_t i = 0; i < n; ++i) {
        BitVec v(m + n);
        for (std::size_t r = 0; r < m; ++r)
            if (cols[i].test(r)) v.set(r);
        v.set(m + i);
        aug.push_back(v);
    }
    std::vector<BitVec> piv_rows;
    std::vector<std::size_t> piv;
    std::vector<BitVec> ker;
    for (auto v : aug) {
        for (std::size_t i = 0; i < piv_rows.size(); ++i)
            if (v.test(piv[i])) v ^= piv_rows[i];
        std::size_t p = v.find_first();
        if (p < m) {
            piv_rows.push_back(v);
            piv.push_back(p);
        } else {
            BitVec k(n);
            for (std::size_t i = 0; i < n; ++i)
                if (v.test(m + i)) k.set(i);
            ker.push_back(k);
        }
    }
    return ker;
}

inline std::string bits_string(const BitVec& v) {
    std::string s(v.size(), '0');
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.test(i)) s[i] = '1';
    return s;
}

} // namespace orbsp
