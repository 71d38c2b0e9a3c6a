// Primal-dual path-following interior-point solver for ConicProblem
// instances: Nesterov-Todd scaling on PSD blocks, log-barrier on the
// orthant, Mehrotra predictor-corrector steps, dense m x m Schur
// complement factored by pivoted Cholesky.
//
// The solver never throws on numerical trouble; it reports a status.
// It is deterministic: fixed summation orders, no randomized pivoting.

#pragma once

#include <codebound/conic.hpp>
#include <codebound/linalg.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

namespace codebound {

struct SolverParams {
    double gap_tol = 1e-8;
    double feas_tol = 1e-8;
    int max_iter = 200;
    double step_fraction = 0.98;
    double initial_scale = 1.0;

    void validate() const {
        if (gap_tol <= 0 || feas_tol <= 0) throw std::invalid_argument("SolverParams: tolerances must be positive");
        if (max_iter <= 0) throw std::invalid_argument("SolverParams: max_iter must be positive");
        if (!(step_fraction > 0.0 && step_fraction < 1.0))
            throw std::invalid_argument("SolverParams: step_fraction must lie in (0,1)");
        if (initial_scale <= 0) throw std::invalid_argument("SolverParams: initial_scale must be positive");
    }
};

struct IterateRecord {
    int iter = 0;
    double mu = 0.0;
    double primal_res = 0.0;
    double dual_res = 0.0;
    double alpha_p = 0.0;
    double alpha_d = 0.0;
};

struct IterateLog {
    std::vector<IterateRecord> records;

    void write_csv(std::ostream& os) const {
        os << "iter,mu,primal_res,dual_res,alpha_p,alpha_d\n";
        os.precision(17);
        for (const auto& r : records)
            os << r.iter << "," << r.mu << "," << r.primal_res << "," << r.dual_res << ","
               << r.alpha_p << "," << r.alpha_d << "\n";
    }
};

// ---- presolve ---------------------------------------------------------------

struct Presolve {
    ConicProblem reduced;
    SolveStatus status = SolveStatus::Optimal;  // PrimalInfeasibleLikely on inconsistent fixings
    std::vector<int> var_map;                   // original orthant index -> reduced index, -1 if fixed
    std::vector<double> fixed_value;            // per original orthant index (valid where var_map = -1)
    std::vector<int> fixing_constraint;         // per original orthant index, consuming constraint or -1
    std::vector<int> fixing_order;              // fixed variables in consumption order
    std::vector<int> kept;                      // original constraint indices present in reduced
    std::vector<int> dropped;                   // dependent / vacuous constraints (get y = 0)
    double objective_offset = 0.0;              // <C, fixed part>
    int fixed_count = 0;
};

namespace ipm_detail {

// trace inner product of two sparse expressions (dense-form semantics)
inline double sparse_inner(const LinearExpr& a, const LinearExpr& b) {
    double s = 0.0;
    for (const auto& [ia, va] : a.orthant)
        for (const auto& [ib, vb] : b.orthant)
            if (ia == ib) s += va * vb;
    for (const auto& ea : a.entries)
        for (const auto& eb : b.entries)
            if (ea.block == eb.block && ea.i == eb.i && ea.j == eb.j)
                s += (ea.i == ea.j ? 1.0 : 2.0) * ea.v * eb.v;
    return s;
}

}  // namespace ipm_detail

// Eliminates orthant variables fixed by singleton constraints and removes
// linearly dependent constraints (incremental Cholesky of the Gram matrix).
inline Presolve presolve(const ConicProblem& p) {
    p.validate();
    Presolve r;
    const int n_orth = p.cone.orthant_dim;
    const int m = static_cast<int>(p.constraints.size());
    r.var_map.assign(n_orth, 0);
    r.fixed_value.assign(n_orth, 0.0);
    r.fixing_constraint.assign(n_orth, -1);

    std::vector<char> fixed(n_orth, 0);
    std::vector<char> consumed(m, 0);
    const double tol = 1e-9;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < m; ++j) {
            if (consumed[j]) continue;
            const Constraint& c = p.constraints[j];
            if (!c.a.entries.empty()) continue;
            int live_idx = -1;
            double live_coef = 0.0;
            double shift = 0.0;
            bool multiple = false;
            for (const auto& [idx, v] : c.a.orthant) {
                if (v == 0.0) continue;
                if (fixed[idx]) {
                    shift += v * r.fixed_value[idx];
                } else if (live_idx == -1 || live_idx == idx) {
                    live_idx = idx;
                    live_coef += v;
                } else {
                    multiple = true;
                }
            }
            if (multiple) continue;
            if (live_idx == -1 || live_coef == 0.0) {
                // vacuous after substitutions: keep iff consistent
                if (std::fabs(c.b - shift) > tol * (1.0 + std::fabs(c.b))) {
                    r.status = SolveStatus::PrimalInfeasibleLikely;
                    return r;
                }
                consumed[j] = 1;
                r.dropped.push_back(j);
                changed = true;
                continue;
            }
            double value = (c.b - shift) / live_coef;
            if (value < -tol) {
                r.status = SolveStatus::PrimalInfeasibleLikely;
                return r;
            }
            fixed[live_idx] = 1;
            r.fixed_value[live_idx] = std::max(value, 0.0);
            r.fixing_constraint[live_idx] = j;
            r.fixing_order.push_back(live_idx);
            consumed[j] = 1;
            changed = true;
        }
    }

    // reindex surviving orthant variables
    int next = 0;
    for (int i = 0; i < n_orth; ++i) r.var_map[i] = fixed[i] ? -1 : next++;
    r.fixed_count = n_orth - next;

    r.reduced.cone.orthant_dim = next;
    r.reduced.cone.psd_block_sizes = p.cone.psd_block_sizes;

    auto rewrite = [&](const LinearExpr& e, double& shift_out) {
        LinearExpr out;
        double shift = 0.0;
        for (const auto& [idx, v] : e.orthant) {
            if (fixed[idx])
                shift += v * r.fixed_value[idx];
            else
                out.add_orthant(r.var_map[idx], v);
        }
        out.entries = e.entries;
        shift_out = shift;
        return out;
    };

    double obj_shift = 0.0;
    r.reduced.objective = rewrite(p.objective, obj_shift);
    r.objective_offset = obj_shift;

    // dependent-constraint filter via incremental Cholesky of the Gram matrix
    std::vector<LinearExpr> rewritten(m);
    std::vector<double> rhs(m, 0.0);
    std::vector<int> candidates;
    for (int j = 0; j < m; ++j) {
        if (consumed[j]) continue;
        double shift = 0.0;
        rewritten[j] = rewrite(p.constraints[j].a, shift);
        rhs[j] = p.constraints[j].b - shift;
        if (rewritten[j].orthant.empty() && rewritten[j].entries.empty()) {
            if (std::fabs(rhs[j]) > tol * (1.0 + std::fabs(p.constraints[j].b))) {
                r.status = SolveStatus::PrimalInfeasibleLikely;
                return r;
            }
            r.dropped.push_back(j);
            continue;
        }
        candidates.push_back(j);
    }

    const int mc = static_cast<int>(candidates.size());
    Mat l(mc, mc);  // incremental lower Cholesky of the kept Gram
    std::vector<double> kept_rhs;
    std::vector<int> kept_local;
    int kr = 0;  // number kept so far
    for (int idx = 0; idx < mc; ++idx) {
        int j = candidates[idx];
        double self = ipm_detail::sparse_inner(rewritten[j], rewritten[j]);
        std::vector<double> g(kr);
        for (int k = 0; k < kr; ++k)
            g[k] = ipm_detail::sparse_inner(rewritten[kept_local[k]], rewritten[j]);
        // forward solve L z = g
        std::vector<double> z(kr);
        for (int a = 0; a < kr; ++a) {
            double s = g[a];
            for (int b = 0; b < a; ++b) s -= l(a, b) * z[b];
            z[a] = s / l(a, a);
        }
        double res2 = self;
        for (double v : z) res2 -= v * v;
        if (res2 <= 1e-20 * std::max(self, 1e-300)) {
            // dependent: check right-hand side consistency
            std::vector<double> coef(kr);
            for (int a = kr - 1; a >= 0; --a) {
                double s = z[a];
                for (int b = a + 1; b < kr; ++b) s -= l(b, a) * coef[b];
                coef[a] = s / l(a, a);
            }
            double predicted = 0.0;
            for (int a = 0; a < kr; ++a) predicted += coef[a] * kept_rhs[a];
            if (std::fabs(rhs[j] - predicted) > 1e-7 * (1.0 + std::fabs(rhs[j]))) {
                r.status = SolveStatus::PrimalInfeasibleLikely;
                return r;
            }
            r.dropped.push_back(j);
            continue;
        }
        for (int a = 0; a < kr; ++a) l(kr, a) = z[a];
        l(kr, kr) = std::sqrt(res2);
        kept_local.push_back(j);
        kept_rhs.push_back(rhs[j]);
        ++kr;
        r.kept.push_back(j);
        r.reduced.constraints.push_back({rewritten[j], rhs[j]});
    }
    return r;
}

// ---- solver -----------------------------------------------------------------

namespace ipm_detail {

const double kEigFloor = 1e-250;

inline double f_sqrt(double x) { return std::sqrt(std::max(x, kEigFloor)); }
inline double f_inv_sqrt(double x) { return 1.0 / std::sqrt(std::max(x, kEigFloor)); }
inline double f_inv(double x) { return 1.0 / std::max(x, kEigFloor); }

// max alpha with X + alpha D staying PSD; X must be PD
inline double max_step(const Mat& x, const Mat& d) {
    Mat l;
    if (!cholesky(x, l)) return 0.0;
    int n = x.rows();
    // B = L^{-1} D L^{-T}
    Mat b(n, n);
    for (int col = 0; col < n; ++col) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = d(i, col);
        v = forward_solve(l, v);
        for (int i = 0; i < n; ++i) b(i, col) = v[i];
    }
    Mat bt = b.transpose();
    Mat c(n, n);
    for (int col = 0; col < n; ++col) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = bt(i, col);
        v = forward_solve(l, v);
        for (int i = 0; i < n; ++i) c(i, col) = v[i];
    }
    c.symmetrize();
    double lmin = psd_min_eig(c);
    if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

inline double max_step_orthant(const std::vector<double>& x, const std::vector<double>& d) {
    double a = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < x.size(); ++i)
        if (d[i] < 0.0) a = std::min(a, -x[i] / d[i]);
    return a;
}

struct BlockScaling {
    Mat w, w_half, w_mhalf, s_inv;
    EigenDecomposition v_eig;  // of V = W^{-1/2} X W^{-1/2}
};

}  // namespace ipm_detail

inline Solution solve(const ConicProblem& problem, const SolverParams& params = SolverParams{},
                      IterateLog* log = nullptr);

namespace ipm_detail {

// Core loop on a presolved problem. Returns a Solution in the reduced space.
inline Solution solve_core(const ConicProblem& p, const SolverParams& params, IterateLog* log) {
    const int m = static_cast<int>(p.constraints.size());
    const int n_orth = p.cone.orthant_dim;
    const int nblocks = static_cast<int>(p.cone.psd_block_sizes.size());
    const int nu = p.cone.degree();

    Solution sol;
    sol.x = BlockSymMatrix(p.cone);
    sol.y.assign(m, 0.0);

    BlockSymMatrix X = BlockSymMatrix::identity(p.cone, params.initial_scale);
    BlockSymMatrix S = BlockSymMatrix::identity(p.cone, params.initial_scale);
    std::vector<double> y(m, 0.0);

    double norm_b = 0.0;
    for (const auto& c : p.constraints) norm_b = std::max(norm_b, std::fabs(c.b));
    double norm_c = p.objective.dense(p.cone).max_abs();

    auto primal_residual = [&](const BlockSymMatrix& xx, std::vector<double>& rp) {
        double inf = 0.0;
        rp.resize(m);
        for (int j = 0; j < m; ++j) {
            rp[j] = p.constraints[j].b - p.constraints[j].a.inner(xx);
            inf = std::max(inf, std::fabs(rp[j]));
        }
        return inf;
    };

    auto dual_residual = [&](const std::vector<double>& yy, const BlockSymMatrix& ss,
                             BlockSymMatrix& rd) {
        rd = BlockSymMatrix(p.cone);
        p.objective.add_to(rd, 1.0);
        for (int j = 0; j < m; ++j) p.constraints[j].a.add_to(rd, -yy[j]);
        for (int i = 0; i < n_orth; ++i) rd.orthant()[i] += ss.orthant()[i];
        for (int k = 0; k < nblocks; ++k) {
            Mat& b = rd.blocks()[k];
            const Mat& s = ss.blocks()[k];
            for (int i = 0; i < b.rows(); ++i)
                for (int jj = 0; jj < b.cols(); ++jj) b(i, jj) += s(i, jj);
        }
        return rd.max_abs();
    };

    std::vector<double> rp;
    BlockSymMatrix Rd(p.cone);
    int stall = 0;

    for (int iter = 0; iter < params.max_iter; ++iter) {
        double rp_inf = primal_residual(X, rp);
        double rd_inf = dual_residual(y, S, Rd);
        double pobj = p.objective.inner(X);
        double dobj = 0.0;
        for (int j = 0; j < m; ++j) dobj += p.constraints[j].b * y[j];
        double mu = trace_inner(X, S) / std::max(nu, 1);

        if (log) log->records.push_back({iter, mu, rp_inf, rd_inf, 0.0, 0.0});

        bool feas_p = rp_inf <= params.feas_tol * (1.0 + norm_b);
        bool feas_d = rd_inf <= params.feas_tol * (1.0 + norm_c);
        double gap_scale = 1.0 + std::fabs(pobj);
        bool gap_ok = std::fabs(dobj - pobj) <= params.gap_tol * gap_scale &&
                      mu * nu <= params.gap_tol * gap_scale;
        if (feas_p && feas_d && gap_ok) {
            sol.status = SolveStatus::Optimal;
            sol.x = X;
            sol.y = y;
            sol.primal_value = pobj;
            sol.dual_value = dobj;
            sol.gap = dobj - pobj;
            return sol;
        }
        if (!std::isfinite(mu) || !std::isfinite(pobj) || !std::isfinite(dobj)) {
            sol.status = SolveStatus::NumericalFailure;
            break;
        }
        // crude divergence heuristics; generated problems are feasible by construction
        double ymax = 0.0;
        for (double v : y) ymax = std::max(ymax, std::fabs(v));
        if (ymax > 1e13 * (1.0 + norm_c)) {
            sol.status = SolveStatus::PrimalInfeasibleLikely;
            break;
        }
        if (std::fabs(pobj) > 1e13 * (1.0 + norm_b) * (1.0 + norm_c)) {
            sol.status = SolveStatus::DualInfeasibleLikely;
            break;
        }

        // NT scalings
        std::vector<double> w2(n_orth);  // diag of W^2 = x/s
        for (int i = 0; i < n_orth; ++i) w2[i] = X.orthant()[i] / S.orthant()[i];
        std::vector<BlockScaling> bs(nblocks);
        for (int k = 0; k < nblocks; ++k) {
            const Mat& Xk = X.blocks()[k];
            const Mat& Sk = S.blocks()[k];
            auto es = jacobi_eigen(Sk);
            Mat s_half = eigen_apply(es, f_sqrt);
            Mat s_mhalf = eigen_apply(es, f_inv_sqrt);
            bs[k].s_inv = eigen_apply(es, f_inv);
            Mat t = s_half * Xk * s_half;
            t.symmetrize();
            auto et = jacobi_eigen(t);
            Mat t_half = eigen_apply(et, f_sqrt);
            bs[k].w = s_mhalf * t_half * s_mhalf;
            bs[k].w.symmetrize();
            auto ew = jacobi_eigen(bs[k].w);
            bs[k].w_half = eigen_apply(ew, f_sqrt);
            bs[k].w_mhalf = eigen_apply(ew, f_inv_sqrt);
            Mat v = bs[k].w_mhalf * Xk * bs[k].w_mhalf;
            v.symmetrize();
            bs[k].v_eig = jacobi_eigen(v);
        }

        // Schur complement M_{jk} = <A_j, W A_k W>
        Mat M(m, m);
        for (int j = 0; j < m; ++j) {
            const LinearExpr& aj = p.constraints[j].a;
            for (int k = 0; k <= j; ++k) {
                const LinearExpr& ak = p.constraints[k].a;
                double s = 0.0;
                for (const auto& [ia, va] : aj.orthant)
                    for (const auto& [ib, vb] : ak.orthant)
                        if (ia == ib) s += w2[ia] * va * vb;
                for (const auto& ea : aj.entries)
                    for (const auto& eb : ak.entries) {
                        if (ea.block != eb.block) continue;
                        const Mat& w = bs[ea.block].w;
                        int a = ea.i, b = ea.j, c = eb.i, d = eb.j;
                        double g = w(a, c) * w(d, b);
                        if (c != d) g += w(a, d) * w(c, b);
                        if (a != b) g += w(b, c) * w(d, a);
                        if (a != b && c != d) g += w(b, d) * w(c, a);
                        s += ea.v * eb.v * g;
                    }
                M(j, k) = s;
                M(k, j) = s;
            }
        }

        PivotedCholesky chol;
        bool ok = chol.factor(M, 1e-14);
        if (!ok) {
            double reg = 1e-12;
            double maxd = 0.0;
            for (int i = 0; i < m; ++i) maxd = std::max(maxd, M(i, i));
            for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
                Mat Mr = M;
                for (int i = 0; i < m; ++i) Mr(i, i) += reg * (1.0 + maxd);
                ok = chol.factor(Mr, 1e-14);
                reg *= 1e3;
            }
            if (!ok) {
                sol.status = SolveStatus::NumericalFailure;
                break;
            }
        }

        // W R_d W (appears on the RHS of both solves)
        BlockSymMatrix WRdW(p.cone);
        for (int i = 0; i < n_orth; ++i) WRdW.orthant()[i] = w2[i] * Rd.orthant()[i];
        for (int k = 0; k < nblocks; ++k) {
            Mat t = bs[k].w * Rd.blocks()[k] * bs[k].w;
            t.symmetrize();
            WRdW.blocks()[k] = t;
        }

        auto newton = [&](const BlockSymMatrix& rc, std::vector<double>& dy, BlockSymMatrix& dX,
                          BlockSymMatrix& dS) {
            std::vector<double> rhs(m);
            for (int j = 0; j < m; ++j)
                rhs[j] = p.constraints[j].a.inner(rc) + p.constraints[j].a.inner(WRdW) - rp[j];
            dy = chol.solve(rhs);
            dS = BlockSymMatrix(p.cone);
            for (int j = 0; j < m; ++j) p.constraints[j].a.add_to(dS, dy[j]);
            for (int i = 0; i < n_orth; ++i) dS.orthant()[i] -= Rd.orthant()[i];
            for (int k = 0; k < nblocks; ++k) {
                Mat& b = dS.blocks()[k];
                const Mat& r = Rd.blocks()[k];
                for (int i = 0; i < b.rows(); ++i)
                    for (int jj = 0; jj < b.cols(); ++jj) b(i, jj) -= r(i, jj);
            }
            dX = BlockSymMatrix(p.cone);
            for (int i = 0; i < n_orth; ++i) dX.orthant()[i] = rc.orthant()[i] - w2[i] * dS.orthant()[i];
            for (int k = 0; k < nblocks; ++k) {
                Mat t = bs[k].w * dS.blocks()[k] * bs[k].w;
                Mat r = rc.blocks()[k] - t;
                r.symmetrize();
                dX.blocks()[k] = r;
            }
        };

        // predictor: Rc = -X
        BlockSymMatrix rc(p.cone);
        for (int i = 0; i < n_orth; ++i) rc.orthant()[i] = -X.orthant()[i];
        for (int k = 0; k < nblocks; ++k) rc.blocks()[k] = -1.0 * X.blocks()[k];
        std::vector<double> dy_aff;
        BlockSymMatrix dX_aff(p.cone), dS_aff(p.cone);
        newton(rc, dy_aff, dX_aff, dS_aff);

        double ap_aff = std::min(1.0, max_step_orthant(X.orthant(), dX_aff.orthant()));
        double ad_aff = std::min(1.0, max_step_orthant(S.orthant(), dS_aff.orthant()));
        for (int k = 0; k < nblocks; ++k) {
            ap_aff = std::min(ap_aff, max_step(X.blocks()[k], dX_aff.blocks()[k]));
            ad_aff = std::min(ad_aff, max_step(S.blocks()[k], dS_aff.blocks()[k]));
        }
        ap_aff = std::min(ap_aff, 1.0);
        ad_aff = std::min(ad_aff, 1.0);

        double mu_aff = 0.0;
        {
            BlockSymMatrix xa = X, sa = S;
            for (int i = 0; i < n_orth; ++i) {
                xa.orthant()[i] += ap_aff * dX_aff.orthant()[i];
                sa.orthant()[i] += ad_aff * dS_aff.orthant()[i];
            }
            for (int k = 0; k < nblocks; ++k) {
                xa.blocks()[k] = xa.blocks()[k] + ap_aff * dX_aff.blocks()[k];
                sa.blocks()[k] = sa.blocks()[k] + ad_aff * dS_aff.blocks()[k];
            }
            mu_aff = std::max(trace_inner(xa, sa) / std::max(nu, 1), 0.0);
        }
        double sigma = mu > 0 ? std::pow(mu_aff / mu, 3.0) : 0.0;
        sigma = std::min(std::max(sigma, 1e-10), 1.0);

        // corrector: Rc = sigma*mu*S^{-1} - X - W^{1/2} L_V^{-1}(sym(dVx dVs)) W^{1/2}
        BlockSymMatrix rc2(p.cone);
        for (int i = 0; i < n_orth; ++i)
            rc2.orthant()[i] = sigma * mu / S.orthant()[i] - X.orthant()[i] -
                               dX_aff.orthant()[i] * dS_aff.orthant()[i] / S.orthant()[i];
        for (int k = 0; k < nblocks; ++k) {
            const BlockScaling& sc = bs[k];
            Mat dvx = sc.w_mhalf * dX_aff.blocks()[k] * sc.w_mhalf;
            Mat dvs = sc.w_half * dS_aff.blocks()[k] * sc.w_half;
            Mat rsym = 0.5 * (dvx * dvs + dvs * dvx);
            rsym.symmetrize();
            // solve V U + U V = 2 rsym in V's eigenbasis
            const EigenDecomposition& ev = sc.v_eig;
            int s = rsym.rows();
            Mat rprime = ev.vectors.transpose() * rsym * ev.vectors;
            for (int i = 0; i < s; ++i)
                for (int jj = 0; jj < s; ++jj) {
                    double den = ev.values[i] + ev.values[jj];
                    rprime(i, jj) = 2.0 * rprime(i, jj) / (den > kEigFloor ? den : kEigFloor);
                }
            Mat u = ev.vectors * rprime * ev.vectors.transpose();
            Mat corr = sc.w_half * u * sc.w_half;
            Mat out = sigma * mu * sc.s_inv - X.blocks()[k] - corr;
            out.symmetrize();
            rc2.blocks()[k] = out;
        }

        std::vector<double> dy;
        BlockSymMatrix dX(p.cone), dS(p.cone);
        newton(rc2, dy, dX, dS);

        double ap = max_step_orthant(X.orthant(), dX.orthant());
        double ad = max_step_orthant(S.orthant(), dS.orthant());
        for (int k = 0; k < nblocks; ++k) {
            ap = std::min(ap, max_step(X.blocks()[k], dX.blocks()[k]));
            ad = std::min(ad, max_step(S.blocks()[k], dS.blocks()[k]));
        }
        ap = std::min(1.0, params.step_fraction * ap);
        ad = std::min(1.0, params.step_fraction * ad);

        if (log && !log->records.empty()) {
            log->records.back().alpha_p = ap;
            log->records.back().alpha_d = ad;
        }

        if (ap < 1e-10 && ad < 1e-10) {
            if (++stall >= 3) {
                sol.status = SolveStatus::NumericalFailure;
                break;
            }
        } else {
            stall = 0;
        }

        for (int i = 0; i < n_orth; ++i) {
            X.orthant()[i] += ap * dX.orthant()[i];
            S.orthant()[i] += ad * dS.orthant()[i];
        }
        for (int k = 0; k < nblocks; ++k) {
            X.blocks()[k] = X.blocks()[k] + ap * dX.blocks()[k];
            S.blocks()[k] = S.blocks()[k] + ad * dS.blocks()[k];
        }
        for (int j = 0; j < m; ++j) y[j] += ad * dy[j];
    }

    if (sol.status == SolveStatus::NumericalFailure && !std::isfinite(trace_inner(X, S))) {
        // leave defaults; X may be garbage
    }
    if (sol.status != SolveStatus::PrimalInfeasibleLikely &&
        sol.status != SolveStatus::DualInfeasibleLikely &&
        sol.status != SolveStatus::NumericalFailure) {
        sol.status = SolveStatus::MaxIter;
    }
    sol.x = X;
    sol.y = y;
    sol.primal_value = p.objective.inner(X);
    sol.dual_value = 0.0;
    for (int j = 0; j < m; ++j) sol.dual_value += p.constraints[j].b * y[j];
    sol.gap = sol.dual_value - sol.primal_value;
    return sol;
}

}  // namespace ipm_detail

inline Solution solve(const ConicProblem& problem, const SolverParams& params, IterateLog* log) {
    problem.validate();
    params.validate();
    Presolve pre = presolve(problem);
    const int m = static_cast<int>(problem.constraints.size());
    const int n_orth = problem.cone.orthant_dim;

    Solution out;
    out.x = BlockSymMatrix(problem.cone);
    out.y.assign(m, 0.0);

    if (pre.status != SolveStatus::Optimal) {
        out.status = pre.status;
        return out;
    }

    Solution core;
    bool trivially_solved = false;
    if (pre.reduced.constraints.empty()) {
        // everything was consumed; remaining variables are free to sit at zero
        // provided no positive objective coefficient is left unconstrained
        bool unbounded = false;
        for (const auto& [idx, v] : pre.reduced.objective.orthant)
            if (v > 1e-12) unbounded = true;
        for (const auto& e : pre.reduced.objective.entries)
            if (e.i == e.j ? e.v > 1e-12 : e.v != 0.0) unbounded = true;
        if (unbounded) {
            out.status = SolveStatus::DualInfeasibleLikely;
            return out;
        }
        core.x = BlockSymMatrix(pre.reduced.cone);
        core.y.clear();
        core.status = SolveStatus::Optimal;
        core.primal_value = 0.0;
        core.dual_value = 0.0;
        core.gap = 0.0;
        trivially_solved = true;
    } else {
        core = ipm_detail::solve_core(pre.reduced, params, log);
    }
    (void)trivially_solved;

    out.status = core.status;

    // assemble the original-space primal point
    BlockSymMatrix x_full(problem.cone);
    for (int i = 0; i < n_orth; ++i)
        x_full.orthant()[i] =
            pre.var_map[i] >= 0 ? core.x.orthant()[pre.var_map[i]] : pre.fixed_value[i];
    for (size_t k = 0; k < problem.cone.psd_block_sizes.size(); ++k)
        x_full.blocks()[k] = core.x.blocks()[k];

    // dual variables: kept constraints take the core multipliers, dependent
    // ones take zero, fixing constraints are back-solved (reverse order) so
    // that the orthant slack of each eliminated variable is exactly zero
    std::vector<double> y_full(m, 0.0);
    for (size_t k = 0; k < pre.kept.size(); ++k) y_full[pre.kept[k]] = core.y[k];

    // per-variable original coefficient lists are needed for back-solving
    for (auto it = pre.fixing_order.rbegin(); it != pre.fixing_order.rend(); ++it) {
        int var = *it;
        int jc = pre.fixing_constraint[var];
        double c_i = 0.0;
        for (const auto& [idx, v] : problem.objective.orthant)
            if (idx == var) c_i += v;
        double others = 0.0;
        double own = 0.0;
        for (int j = 0; j < m; ++j) {
            double coef = 0.0;
            for (const auto& [idx, v] : problem.constraints[j].a.orthant)
                if (idx == var) coef += v;
            if (j == jc)
                own = coef;
            else
                others += y_full[j] * coef;
        }
        y_full[jc] = (c_i - others) / own;
    }

    out.x = x_full;
    out.y = y_full;
    out.primal_value = problem.objective.inner(x_full);
    out.dual_value = 0.0;
    for (int j = 0; j < m; ++j) out.dual_value += problem.constraints[j].b * y_full[j];
    out.gap = out.dual_value - out.primal_value;
    return out;
}

}  // namespace codebound
