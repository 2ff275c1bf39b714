// Exact arithmetic in towers of number fields.
//
// A Tower is a chain Q = L0 ⊂ L1 ⊂ ... ⊂ Lk where each level adjoins one
// root of a monic polynomial with coefficients from the level below.  Every
// generator is pinned to a concrete complex number by an isolating box for a
// root of an integer polynomial, so elements have certified numeric values
// in addition to their exact representation.
//
// A TowerElem is stored recursive-dense: a level-0 element is a rational; a
// level-k element is a polynomial in the k-th generator with coefficients of
// strictly smaller level, trimmed and collapsed so the representation is
// canonical (equality is structural).  Arithmetic reduces modulo the level's
// minimal polynomial; inverses come from the extended Euclidean algorithm,
// recursing down the tower.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cps/interval.hpp"
#include "cps/rational.hpp"
#include "cps/roots.hpp"

namespace cps {

class Tower;

class TowerElem {
public:
    TowerElem() : rat_(0) {}
    TowerElem(int n) : rat_(n) {}
    explicit TowerElem(const Rat& r) : rat_(r) {}

    // The k-th generator of `t` as an element (coefficient vector {0, 1}).
    static TowerElem generator(std::shared_ptr<Tower> t, int k);
    static TowerElem make(std::shared_ptr<Tower> t, int level, std::vector<TowerElem> coeffs);

    int level() const { return level_; }
    bool is_rational() const { return level_ == 0; }
    const Rat& rat() const;
    bool is_zero() const { return level_ == 0 && rat_ == 0; }
    const std::shared_ptr<Tower>& tower() const { return tower_; }
    const std::vector<TowerElem>& coeffs() const { return coeffs_; }

    TowerElem inv() const;
    TowerElem pow(unsigned long e) const;

    TowerElem operator-() const;
    friend TowerElem operator+(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator-(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator/(const TowerElem& a, const TowerElem& b);
    friend bool operator==(const TowerElem& a, const TowerElem& b);
    friend bool operator!=(const TowerElem& a, const TowerElem& b) { return !(a == b); }

private:
    std::shared_ptr<Tower> tower_;   // null when level_ == 0
    int level_ = 0;
    Rat rat_;                        // payload when level_ == 0
    std::vector<TowerElem> coeffs_;  // payload when level_ > 0; ascending, size >= 2
};

struct TowerLevel {
    std::string name;                        // generator display name
    std::vector<TowerElem> minpoly;          // monic, ascending, coefficients of lower level
    std::shared_ptr<IsolatedRoots> source;   // integer polynomial the generator is a root of
    int source_index = 0;                    // which of its isolated roots
};

class Tower {
public:
    static std::shared_ptr<Tower> make() { return std::make_shared<Tower>(); }

    int num_levels() const { return static_cast<int>(levels_.size()); }
    const TowerLevel& level(int k) const { return levels_.at(k - 1); }  // k in [1, num_levels()]
    long total_degree() const;

    // Isolating box of the k-th generator, refined to at least `bits`.
    CInterval generator_box(int k, long bits);

    // Appends a level and returns its index; guards the total-degree cap.
    int push_level(TowerLevel lv);

private:
    std::vector<TowerLevel> levels_;
};

// Certified numeric value of an element (generators refined to `bits`).
CInterval eval_box(const TowerElem& e, long bits);

// Monic irreducible factors (with multiplicity) of a monic polynomial whose
// coefficients live at level <= `level` of tower T.  Trager's norm descent,
// bottoming out in rational factorization.
std::vector<std::pair<std::vector<TowerElem>, int>>
factor_over_tower(const std::shared_ptr<Tower>& T, const std::vector<TowerElem>& g, int level);

// Exact expression for the root of `source->poly` sitting in box `index`,
// extending T by a new level only when the root is not already expressible.
TowerElem adjoin_root(const std::shared_ptr<Tower>& T,
                      const std::shared_ptr<IsolatedRoots>& source, int index,
                      const std::string& name_hint = "");

// Exact expressions for all roots of `source->poly` (monic, squarefree),
// aligned with the source box order.  Uses closed forms where available:
// second root of a quadratic from the trace, cyclotomic roots as powers of
// one primitive root.
std::vector<TowerElem> all_roots(const std::shared_ptr<Tower>& T,
                                 const std::shared_ptr<IsolatedRoots>& source);

// The imaginary unit inside T (adjoins a root of X^2+1 when needed).
TowerElem imaginary_unit(const std::shared_ptr<Tower>& T);

// Coordinates of `e` over the rational basis of tower T: the basis monomials
// are g1^e1 * g2^e2 * ... with ek < deg(level k) and the level-1 exponent
// varying fastest, so the vector has length T->total_degree().  Rational
// elements expand in any tower; elements of other towers are rejected.
std::vector<Rat> q_coordinates(const TowerElem& e, const std::shared_ptr<Tower>& T);

// The field isomorphism of Q(src) determined by src -> dst, where src is a
// tower generator whose minimal polynomial f has rational coefficients and
// dst is any exact root of f (possibly in a different tower).  Applies to
// elements lying in Q(src), i.e. of level at most src's level with nothing
// above it.
struct ConjugationMap {
    std::vector<Rat> min_poly;  // monic, ascending: the shared minimal polynomial
    int src_level = 0;
    TowerElem dst;
    TowerElem apply(const TowerElem& e) const;
};
ConjugationMap conjugation_map(const TowerElem& src, const TowerElem& dst);

// Re-expresses elements of `source` inside `target` by adjoining each source
// generator's defining root; apply() maps elements across.
struct TowerEmbedding {
    std::shared_ptr<Tower> target;
    std::vector<TowerElem> generator_image;  // [k-1] = image of source generator k
    TowerElem apply(const TowerElem& e) const;
};
TowerEmbedding embed_tower(const std::shared_ptr<Tower>& target,
                           const std::shared_ptr<Tower>& source);

std::string str(const TowerElem& e);

} // namespace cps
