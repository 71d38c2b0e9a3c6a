// Conic program data model over orthant (+) PSD-block cones.
//
// A program is  max <C,X>  s.t.  <A_j,X> = b_j,  X in K,
// where K is a product of a nonnegative orthant and dense symmetric PSD
// blocks. Constraint matrices are held sparsely (they usually touch a
// handful of entries); values (X, slacks) are dense per block.

#pragma once

#include <codebound/linalg.hpp>

#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace codebound {

struct ConeSpec {
    int orthant_dim = 0;
    std::vector<int> psd_block_sizes;

    void validate() const {
        if (orthant_dim < 0) throw std::invalid_argument("ConeSpec: negative orthant dim");
        for (int s : psd_block_sizes)
            if (s <= 0) throw std::invalid_argument("ConeSpec: block size must be positive");
    }

    // orthant + packed symmetric dimensions
    long long total_dimension() const {
        long long t = orthant_dim;
        for (int s : psd_block_sizes) t += static_cast<long long>(s) * (s + 1) / 2;
        return t;
    }

    // barrier degree nu = orthant_dim + sum of block sizes
    int degree() const {
        int t = orthant_dim;
        for (int s : psd_block_sizes) t += s;
        return t;
    }

    friend bool operator==(const ConeSpec& a, const ConeSpec& b) {
        return a.orthant_dim == b.orthant_dim && a.psd_block_sizes == b.psd_block_sizes;
    }
    friend bool operator!=(const ConeSpec& a, const ConeSpec& b) { return !(a == b); }
};

class BlockSymMatrix {
public:
    BlockSymMatrix() = default;

    explicit BlockSymMatrix(const ConeSpec& spec) : spec_(spec), orthant_(spec.orthant_dim, 0.0) {
        spec.validate();
        for (int s : spec.psd_block_sizes) blocks_.emplace_back(s, s);
    }

    // Full-matrix construction; stored symmetry is enforced here.
    BlockSymMatrix(const ConeSpec& spec, std::vector<double> orthant, std::vector<Mat> blocks)
        : spec_(spec), orthant_(std::move(orthant)), blocks_(std::move(blocks)) {
        spec.validate();
        if (static_cast<int>(orthant_.size()) != spec.orthant_dim)
            throw std::invalid_argument("BlockSymMatrix: orthant length mismatch");
        if (blocks_.size() != spec.psd_block_sizes.size())
            throw std::invalid_argument("BlockSymMatrix: block count mismatch");
        for (size_t k = 0; k < blocks_.size(); ++k) {
            const Mat& b = blocks_[k];
            if (b.rows() != spec.psd_block_sizes[k] || b.cols() != spec.psd_block_sizes[k])
                throw std::invalid_argument("BlockSymMatrix: block shape mismatch");
            for (int i = 0; i < b.rows(); ++i)
                for (int j = i + 1; j < b.cols(); ++j)
                    if (b(i, j) != b(j, i))
                        throw std::invalid_argument("BlockSymMatrix: block not symmetric");
        }
    }

    static BlockSymMatrix identity(const ConeSpec& spec, double scale = 1.0) {
        BlockSymMatrix m(spec);
        for (double& v : m.orthant_) v = scale;
        for (Mat& b : m.blocks_)
            for (int i = 0; i < b.rows(); ++i) b(i, i) = scale;
        return m;
    }

    const ConeSpec& spec() const { return spec_; }
    const std::vector<double>& orthant() const { return orthant_; }
    std::vector<double>& orthant() { return orthant_; }
    const std::vector<Mat>& blocks() const { return blocks_; }
    std::vector<Mat>& blocks() { return blocks_; }

    // symmetric entry write on block k
    void set_block_entry(int k, int i, int j, double v) {
        blocks_[k](i, j) = v;
        blocks_[k](j, i) = v;
    }

    bool conforms(const ConeSpec& other) const { return spec_ == other; }

    double max_abs() const {
        double m = 0.0;
        for (double v : orthant_) m = std::max(m, std::fabs(v));
        for (const Mat& b : blocks_) m = std::max(m, b.max_abs());
        return m;
    }

private:
    ConeSpec spec_;
    std::vector<double> orthant_;
    std::vector<Mat> blocks_;
};

// <X,Y>_T with the summation order fixed by contract: orthant entries in
// order, then each block row-major, blocks in order.
inline double trace_inner(const BlockSymMatrix& x, const BlockSymMatrix& y) {
    if (x.spec() != y.spec()) throw std::invalid_argument("trace_inner: cone mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.orthant().size(); ++i) s += x.orthant()[i] * y.orthant()[i];
    for (size_t k = 0; k < x.blocks().size(); ++k) {
        const Mat& a = x.blocks()[k];
        const Mat& b = y.blocks()[k];
        for (int i = 0; i < a.rows(); ++i) {
            const double* ra = a.row(i);
            const double* rb = b.row(i);
            for (int j = 0; j < a.cols(); ++j) s += ra[j] * rb[j];
        }
    }
    return s;
}

// Sparse symmetric functional: a few orthant coefficients plus a few block
// entries. Entry (k,i,j,v) with i < j stands for the symmetric pair, so it
// contributes 2*v*X_ij to the inner product.
struct LinearExpr {
    struct BlockEntry {
        int block;
        int i, j;  // i <= j
        double v;
    };
    std::vector<std::pair<int, double>> orthant;
    std::vector<BlockEntry> entries;

    void add_orthant(int idx, double v) { orthant.push_back({idx, v}); }
    void add_entry(int block, int i, int j, double v) {
        if (i > j) std::swap(i, j);
        entries.push_back({block, i, j, v});
    }

    double inner(const BlockSymMatrix& x) const {
        double s = 0.0;
        for (const auto& [idx, v] : orthant) s += v * x.orthant()[idx];
        for (const auto& e : entries) {
            double xv = x.blocks()[e.block](e.i, e.j);
            s += (e.i == e.j ? 1.0 : 2.0) * e.v * xv;
        }
        return s;
    }

    void add_to(BlockSymMatrix& out, double scale) const {
        for (const auto& [idx, v] : orthant) out.orthant()[idx] += scale * v;
        for (const auto& e : entries) {
            out.blocks()[e.block](e.i, e.j) += scale * e.v;
            if (e.i != e.j) out.blocks()[e.block](e.j, e.i) += scale * e.v;
        }
    }

    BlockSymMatrix dense(const ConeSpec& spec) const {
        BlockSymMatrix m(spec);
        add_to(m, 1.0);
        return m;
    }

    void validate(const ConeSpec& spec) const {
        for (const auto& [idx, v] : orthant)
            if (idx < 0 || idx >= spec.orthant_dim)
                throw std::invalid_argument("LinearExpr: orthant index out of range");
        for (const auto& e : entries) {
            if (e.block < 0 || e.block >= static_cast<int>(spec.psd_block_sizes.size()))
                throw std::invalid_argument("LinearExpr: block index out of range");
            int s = spec.psd_block_sizes[e.block];
            if (e.i < 0 || e.j < e.i || e.j >= s)
                throw std::invalid_argument("LinearExpr: block entry out of range");
        }
    }
};

struct Constraint {
    LinearExpr a;
    double b = 0.0;
};

struct ConicProblem {
    ConeSpec cone;
    LinearExpr objective;  // C; sense is always maximize
    std::vector<Constraint> constraints;

    void validate() const {
        cone.validate();
        objective.validate(cone);
        if (constraints.empty()) throw std::invalid_argument("ConicProblem: no constraints");
        for (const auto& c : constraints) c.a.validate(cone);
    }

    BlockSymMatrix objective_dense() const { return objective.dense(cone); }
};

enum class SolveStatus {
    Optimal,
    MaxIter,
    NumericalFailure,
    PrimalInfeasibleLikely,
    DualInfeasibleLikely,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::MaxIter: return "MaxIter";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
        case SolveStatus::PrimalInfeasibleLikely: return "PrimalInfeasibleLikely";
        case SolveStatus::DualInfeasibleLikely: return "DualInfeasibleLikely";
    }
    return "?";
}

struct Solution {
    BlockSymMatrix x;
    std::vector<double> y;
    SolveStatus status = SolveStatus::NumericalFailure;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;  // dual_value - primal_value
};

// Structured dual of a problem: min b^T y with slack(y) = sum y_j A_j - C
// constrained to the (self-dual) cone.
struct DualDescription {
    std::vector<double> b;
    int num_vars = 0;
    ConicProblem primal;

    BlockSymMatrix slack(const std::vector<double>& y) const {
        if (static_cast<int>(y.size()) != num_vars)
            throw std::invalid_argument("dual slack: y dimension mismatch");
        BlockSymMatrix s(primal.cone);
        for (int j = 0; j < num_vars; ++j) primal.constraints[j].a.add_to(s, y[j]);
        primal.objective.add_to(s, -1.0);
        return s;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "min b'y over y in R^" << num_vars << ", slack(y) = sum_j y_j A_j - C in K*\n";
        os << "b =";
        for (double v : b) os << " " << v;
        os << "\n";
        return os.str();
    }
};

inline DualDescription dualize(const ConicProblem& p) {
    p.validate();
    DualDescription d;
    d.num_vars = static_cast<int>(p.constraints.size());
    d.b.reserve(d.num_vars);
    for (const auto& c : p.constraints) d.b.push_back(c.b);
    d.primal = p;
    return d;
}

inline double psd_min_eig(const Mat& m) {
    if (!m.square()) throw std::invalid_argument("psd_min_eig: matrix not square");
    if (m.rows() == 0) return 0.0;
    auto vals = jacobi_eigenvalues(m);
    return vals.front();
}

// smallest eigenvalue across the whole product cone (orthant entries count
// as 1x1 blocks)
inline double min_eig(const BlockSymMatrix& x) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : x.orthant()) m = std::min(m, v);
    for (const Mat& b : x.blocks()) m = std::min(m, psd_min_eig(b));
    if (!std::isfinite(m)) m = 0.0;  // empty cone
    return m;
}

struct DualityReport {
    double gap = 0.0;              // <b,y> - <C,x>
    double slack_min_eig = 0.0;    // min eigenvalue of sum y_j A_j - C
    double compl_slackness = 0.0;  // <x, sum y_j A_j - C>_T
};

inline DualityReport duality_report(const ConicProblem& p, const Solution& s) {
    DualityReport r;
    BlockSymMatrix slack(p.cone);
    for (size_t j = 0; j < p.constraints.size(); ++j) p.constraints[j].a.add_to(slack, s.y[j]);
    p.objective.add_to(slack, -1.0);
    double pv = p.objective.inner(s.x);
    double dv = 0.0;
    for (size_t j = 0; j < p.constraints.size(); ++j) dv += p.constraints[j].b * s.y[j];
    r.gap = dv - pv;
    r.slack_min_eig = min_eig(slack);
    r.compl_slackness = trace_inner(s.x, slack);
    return r;
}

struct HermitianMatrix {
    Mat re, im;

    HermitianMatrix(Mat real_part, Mat imag_part)
        : re(std::move(real_part)), im(std::move(imag_part)) {
        if (!re.square() || !im.square() || re.rows() != im.rows())
            throw std::invalid_argument("HermitianMatrix: shape mismatch");
        for (int i = 0; i < re.rows(); ++i)
            for (int j = 0; j < re.cols(); ++j) {
                if (re(i, j) != re(j, i))
                    throw std::invalid_argument("HermitianMatrix: re not symmetric");
                if (im(i, j) != -im(j, i))
                    throw std::invalid_argument("HermitianMatrix: im not antisymmetric");
            }
    }

    int dim() const { return re.rows(); }
};

// [[Re, -Im], [Im, Re]]; PSD iff the Hermitian input is.
inline Mat realify_hermitian(const HermitianMatrix& h) {
    int n = h.dim();
    Mat x(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            x(i, j) = h.re(i, j);
            x(i, n + j) = -h.im(i, j);
            x(n + i, j) = h.im(i, j);
            x(n + i, n + j) = h.re(i, j);
        }
    return x;
}

// ---- group averaging ------------------------------------------------------

namespace detail {
struct PermHash {
    size_t operator()(const std::vector<int>& p) const {
        size_t h = 1469598103934665603ull;
        for (int v : p) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};
}  // namespace detail

// BFS closure of the generated permutation group; throws when the group
// grows past `cap` elements.
inline std::vector<std::vector<int>> enumerate_group(const std::vector<std::vector<int>>& generators,
                                                     size_t n, size_t cap = 1000000) {
    for (const auto& g : generators) {
        if (g.size() != n) throw std::invalid_argument("gamma_average: generator length mismatch");
        std::vector<char> seen(n, 0);
        for (int v : g) {
            if (v < 0 || v >= static_cast<int>(n) || seen[v])
                throw std::invalid_argument("gamma_average: generator is not a permutation");
            seen[v] = 1;
        }
    }
    std::vector<int> id(n);
    for (size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
    std::unordered_set<std::vector<int>, detail::PermHash> seen;
    std::vector<std::vector<int>> order;
    seen.insert(id);
    order.push_back(id);
    for (size_t head = 0; head < order.size(); ++head) {
        std::vector<int> cur = order[head];
        for (const auto& g : generators) {
            std::vector<int> nxt(n);
            for (size_t i = 0; i < n; ++i) nxt[i] = g[cur[i]];
            if (seen.insert(nxt).second) {
                if (seen.size() > cap)
                    throw std::runtime_error("gamma_average: group size cap exceeded");
                order.push_back(std::move(nxt));
            }
        }
    }
    return order;
}

// (1/|Gamma|) sum_g g X, where g acts by simultaneous row/column permutation.
inline Mat gamma_average(const Mat& x, const std::vector<std::vector<int>>& generators,
                         size_t cap = 1000000) {
    if (!x.square()) throw std::invalid_argument("gamma_average: matrix not square");
    size_t n = static_cast<size_t>(x.rows());
    auto group = enumerate_group(generators, n, cap);
    Mat acc(x.rows(), x.cols());
    for (const auto& g : group) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                acc(g[i], g[j]) += x(static_cast<int>(i), static_cast<int>(j));
    }
    double inv = 1.0 / static_cast<double>(group.size());
    for (double& v : acc.data()) v *= inv;
    return acc;
}

// ---- CONIC v1 text format --------------------------------------------------
//
//   CONIC v1
//   orthant <N>
//   psd <s1> <s2> ...
//   m <num constraints>
//   C <k> <i> <j> <v>      objective entries
//   A <t> <k> <i> <j> <v>  constraint t entries
//   b <t> <v>
//   end
//
// k = 0 is the orthant (i = index, j must be 0), k >= 1 is PSD block k-1.

inline void write_conic_v1(const ConicProblem& p, std::ostream& os) {
    os.precision(17);
    os << "CONIC v1\n";
    os << "orthant " << p.cone.orthant_dim << "\n";
    os << "psd";
    for (int s : p.cone.psd_block_sizes) os << " " << s;
    os << "\n";
    os << "m " << p.constraints.size() << "\n";
    auto emit = [&os](const char* tag, int t, const LinearExpr& e) {
        for (const auto& [idx, v] : e.orthant) {
            os << tag;
            if (t >= 0) os << " " << t;
            os << " 0 " << idx << " 0 " << v << "\n";
        }
        for (const auto& en : e.entries) {
            os << tag;
            if (t >= 0) os << " " << t;
            os << " " << (en.block + 1) << " " << en.i << " " << en.j << " " << en.v << "\n";
        }
    };
    emit("C", -1, p.objective);
    for (size_t t = 0; t < p.constraints.size(); ++t) {
        emit("A", static_cast<int>(t), p.constraints[t].a);
        os << "b " << t << " " << p.constraints[t].b << "\n";
    }
    os << "end\n";
}

inline ConicProblem read_conic_v1(std::istream& is) {
    auto fail = [](const std::string& why) -> ConicProblem {
        throw std::runtime_error("CONIC v1 parse error: " + why);
    };
    std::string line;
    if (!std::getline(is, line) || line != "CONIC v1") return fail("missing header");
    ConicProblem p;
    long long m = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "end") break;
        if (tag == "orthant") {
            if (!(ls >> p.cone.orthant_dim)) return fail("orthant line");
        } else if (tag == "psd") {
            int s;
            while (ls >> s) p.cone.psd_block_sizes.push_back(s);
        } else if (tag == "m") {
            if (!(ls >> m) || m < 0) return fail("m line");
            p.constraints.resize(m);
        } else if (tag == "C" || tag == "A") {
            int t = -1, k, i, j;
            double v;
            if (tag == "A" && !(ls >> t)) return fail("A index");
            if (!(ls >> k >> i >> j >> v)) return fail("entry line");
            LinearExpr* e = nullptr;
            if (tag == "C") {
                e = &p.objective;
            } else {
                if (t < 0 || t >= m) return fail("constraint index out of range");
                e = &p.constraints[t].a;
            }
            if (k == 0)
                e->add_orthant(i, v);
            else
                e->add_entry(k - 1, i, j, v);
        } else if (tag == "b") {
            int t;
            double v;
            if (!(ls >> t >> v) || t < 0 || t >= m) return fail("b line");
            p.constraints[t].b = v;
        } else {
            return fail("unknown tag '" + tag + "'");
        }
    }
    p.validate();
    return p;
}

}  // namespace codebound
