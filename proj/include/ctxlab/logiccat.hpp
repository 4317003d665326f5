#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctxlab/simpdist.hpp"

namespace ctxlab {

// A d x d matrix over the Boolean algebra, packed row-major into a word:
// bit (r*d + c) holds entry (r,c). d <= 4 keeps hom-set bitsets small.
class BoolMatrix {
  public:
    static constexpr int max_d = 4;

    BoolMatrix(int d, uint32_t bits) : d_(d), bits_(bits) {}
    static BoolMatrix zero(int d) { return {d, 0}; }
    static BoolMatrix identity(int d);
    static BoolMatrix ones(int d);
    static BoolMatrix antidiag(int d);  // entries (a, d-1-a); for d = 2 this is {(0,1),(1,0)}

    int d() const { return d_; }
    uint32_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    bool entry(int r, int c) const { return (bits_ >> (r * d_ + c)) & 1u; }
    BoolMatrix with_entry(int r, int c) const { return {d_, bits_ | (1u << (r * d_ + c))}; }

    BoolMatrix operator*(const BoolMatrix& o) const;
    BoolMatrix transpose() const;
    bool operator==(const BoolMatrix& o) const { return d_ == o.d_ && bits_ == o.bits_; }
    bool operator<(const BoolMatrix& o) const { return bits_ < o.bits_; }

    // For d = 2 the letters of the generating semigroup; empty for anything else.
    std::string name() const;
    std::vector<std::string> rows() const;  // "11", "01", ... row strings

    static BoolMatrix from_dist(const Dist& edge_matrix);  // boolean projection of an edge matrix
    Dist to_dist() const;

  private:
    int d_;
    uint32_t bits_;
};

// d = 2 letters.
BoolMatrix bm_I();
BoolMatrix bm_A();
BoolMatrix bm_B();
BoolMatrix bm_BT();
BoolMatrix bm_D();
BoolMatrix bm_U();
BoolMatrix bm_antidiag();

// The logical category of a Boolean distribution: objects are the vertices;
// hom(x,y) is the closure of {edge matrices, their transposes, identities}
// under matrix product along composable paths, with the zero matrix excluded.
// Hom-sets are bitsets over the 2^(d*d) matrix space.
class LogicalCategory {
  public:
    LogicalCategory(int d, std::vector<std::string> objects);

    int d() const { return d_; }
    int num_objects() const { return static_cast<int>(objects_.size()); }
    const std::vector<std::string>& objects() const { return objects_; }

    bool contains(int x, int y, const BoolMatrix& m) const;
    void insert(int x, int y, const BoolMatrix& m);
    std::vector<BoolMatrix> hom(int x, int y) const;  // sorted by packed bits

    // Entrywise AND over hom(x,y): the pairs every morphism allows.
    BoolMatrix allowed_pairs(int x, int y) const;

    bool operator==(const LogicalCategory& o) const {
        return d_ == o.d_ && objects_ == o.objects_ && hom_ == o.hom_;
    }

  private:
    int words_per_hom() const { return (1 << (d_ * d_)) / 64 + 1; }
    int d_;
    std::vector<std::string> objects_;
    std::vector<std::vector<uint64_t>> hom_;  // [x * n + y] -> bitset over matrix codes
};

// Worklist closure of the seed {M_e, M_e^T, identities}. Boolean kind only.
LogicalCategory build_category(const SimpDist& p);

// Functors into the outcome category that keep every morphism satisfied:
// labelings phi with entry (phi(x), phi(y)) set in every matrix of hom(x,y).
std::vector<OutcomeLabeling> category_support(const LogicalCategory& cat);

// Verifies the d = 2 semigroup table on {A, B, B^T, D, U}:
//   (1) UM = MU = U            (2) U,A,D symmetric      (3) AA = DD = U, BB = B
//   (4) M M^T = M^T M = U      (5) AD = B, DA = B^T
//   (6) AB = B^T A = U, BA = A B^T = A, BD = D B^T = U, DB = B^T D = D.
bool semigroup_table_check();

// d = 2 characterization: the category has empty support iff some object x has
// {A, D} inside hom(x,x) or the antidiagonal inside hom(x,x).
bool sc_criterion(const LogicalCategory& cat);

// An edge matrix extends over a filled-in boundary iff every (a,b) with
// nonzero row-a and column-b marginals already carries weight. Such edges
// never constrain the support and can be dropped.
bool boundary_extendable(const Dist& edge_matrix);

// One reduction step record. The reduction drops boundary-extendable edges,
// collapses diagonal edges (normalizing antidiagonals by the group action
// first), discards identity-pattern loops, and then reads the verdict off a
// loop with the antidiagonal or off the A/D endomorphism criterion.
struct ReductionStep {
    enum class Op {
        drop_boundary_extendable,
        normalize_antidiagonal,
        collapse_diagonal,
        drop_identity_loop,
        antidiagonal_loop,   // verdict: strongly contextual
        endomorphism_pair,   // verdict: strongly contextual ({A,D} at one object)
        nonempty_support,    // verdict: not strongly contextual
    } op;
    std::string edge;   // edge acted on, when applicable
    std::string vertex;  // object named by the endomorphism verdict
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    bool strongly_contextual;
};

// Boolean d = 2 decision with an explanation. The verdict always matches
// support emptiness; the trace is the diagnostic value.
ReductionTrace reduce_and_decide(const SimpDist& p);

}  // namespace ctxlab
