#include "stratlab/strat_bound.hpp"

#include "stratlab/error.hpp"
#include "stratlab/quadrature.hpp"
#include "stratlab/wavegreen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace stratlab {

namespace {

void require_condition(const SpectralMeasure& m, double alpha0) {
    require(alpha0 > 0.0 && alpha0 < 1.0, ErrorKind::InvalidArgument, "alpha0 in (0,1)");
    if (m.is_riesz() || m.is_dirac())
        require(m.alpha() + alpha0 < 2.0, ErrorKind::Divergent, "Stratonovich condition fails");
}

// Gamma(a0)^{-1} ∫_A lambda^{a0-1} f(lambda) dlambda
double lambda_integral(const std::function<double(double)>& f, double a0, LambdaRange A, double scale,
                       double tol = 1e-10) {
    require(A.lo >= 0.0 && A.hi > A.lo, ErrorKind::InvalidArgument, "lambda range must be an interval of R+");
    if (std::isinf(A.hi)) return quad::mellin_tail(f, a0, A.lo, std::max(scale, A.lo), tol).value / std::tgamma(a0);
    double total = 0.0;
    double lo = A.lo;
    if (lo == 0.0) {
        const double b = std::min(scale, A.hi);
        total += quad::power_singular(f, 1.0 - a0, b, tol).value;
        lo = b;
    }
    if (lo < A.hi) total += quad::gk([&](double l) { return std::pow(l, a0 - 1.0) * f(l); }, lo, A.hi, tol).value;
    return total / std::tgamma(a0);
}

// ∫_0^∞ e^{-a t} sin(rho t)/rho dt by quadrature
double damped_green_transform(double a, double rho) {
    const double T = 60.0 / a;
    if (rho == 0.0) return quad::gk([&](double t) { return t * std::exp(-a * t); }, 0.0, T, 1e-13).value;
    auto f = [&](double t) { return std::exp(-a * t) * std::sin(rho * t) / rho; };
    return quad::half_periods(f, 0.0, T, M_PI / rho, 1e-13).value;
}

} // namespace

double NormTriple::n1(const PairKey& p) const {
    if (auto it = norm1.find(p); it != norm1.end()) return it->second;
    if (auto it = norm1.find(kAnyPair); it != norm1.end()) return it->second;
    fail(ErrorKind::InvalidArgument, "norm1: no entry for pair");
}

double NormTriple::n2(const PairKey& p) const {
    if (auto it = norm2.find(p); it != norm2.end()) return it->second;
    if (auto it = norm2.find(kAnyPair); it != norm2.end()) return it->second;
    fail(ErrorKind::InvalidArgument, "norm2: no entry for pair");
}

double lemma_a1(double theta, const SpectralMeasure& m, double alpha0, LambdaRange range) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "lemma_a1: theta > 0");
    require_condition(m, alpha0);
    auto f = [&](double l) {
        const double a = theta + l;
        return m.radial_integral([&](double r) { return 1.0 / (a * a + r * r); }, 1e-11, {a});
    };
    return lambda_integral(f, alpha0, range, theta);
}

double lemma_a1_oscillatory(double theta, const SpectralMeasure& m, double alpha0) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "lemma_a1: theta > 0");
    require_condition(m, alpha0);
    auto f = [&](double l) {
        return m.radial_integral([&](double r) { return std::abs(damped_green_transform(theta + l, r)); }, 1e-9,
                                 {theta + l});
    };
    return lambda_integral(f, alpha0, {}, theta, 1e-9);
}

double lemma_a2_closed(double theta, const SpectralMeasure& m, double alpha0, LambdaRange range) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "lemma_a2: theta > 0");
    require_condition(m, alpha0);
    auto f = [&](double l) {
        const double a = theta + l;
        return m.radial_integral(
            [&](double r) {
                const double p = 1.0 / ((a * a + r * r) * (theta * theta + r * r));
                return 0.5 * p + a * p / (2.0 * theta);
            },
            1e-11, {theta, a});
    };
    return lambda_integral(f, alpha0, range, theta);
}

LemmaA2 lemma_a2(double theta, const SpectralMeasure& m, double alpha0) {
    LemmaA2 out;
    out.closed = lemma_a2_closed(theta, m, alpha0);
    require(m.dim() == 1, ErrorKind::DimensionMismatch, "lemma_a2 direct route: d = 1");
    const GreenSpec g{1, 0.0};
    const double S = 25.0 / theta, U = 50.0 / theta;
    // H(s, t) = ∫∫ gamma(x - y) G(t, x) G(s, y) dx dy for s <= t, in real space
    auto H = [&](double s, double t, double tol) {
        if (m.is_dirac()) {
            return quad::gk([&](double x) { return green_eval(g, t, x) * green_eval(g, s, x); }, -s, s, tol).value;
        }
        if (m.is_riesz()) {
            // F'' = |z|^{-alpha}
            const double al = m.alpha();
            auto F = [&](double z) { return std::pow(std::abs(z), 2.0 - al) / ((1.0 - al) * (2.0 - al)); };
            const double box = -F(t - s) + F(-t - s) + F(t + s) - F(-t + s);
            return 0.25 * m.riesz_constant() * box;
        }
        if (m.is_atomic()) {
            double v = 0.0;
            for (const auto& at : std::get<FiniteAtomic>(m.variant()).atoms) {
                const double xi = at.xi[0];
                v += xi == 0.0 ? at.w * s * t : at.w * std::sin(xi * t) * std::sin(xi * s) / (xi * xi);
            }
            return v;
        }
        auto inner = [&](double x) {
            return green_eval(g, t, x) *
                   quad::gk([&](double y) { return gamma_eval(m, x - y) * green_eval(g, s, y); }, -s, s, tol).value;
        };
        return quad::gk(inner, -t, t, tol).value;
    };
    auto run = [&](double tol) {
        auto outer = [&](double s) {
            auto f = [&](double u) { return std::exp(-theta * u) * H(s, s + u, tol); };
            return std::exp(-2.0 * theta * s) * quad::power_singular(f, alpha0, U, tol).value;
        };
        return 2.0 * quad::gk(outer, 0.0, S, tol).value;
    };
    out.direct = run(1e-9);
    out.direct_error = std::abs(out.direct - run(1e-6));
    return out;
}

double lemma_a3_rate(const std::vector<double>& thetas, const SpectralMeasure& m, double alpha0) {
    require(thetas.size() >= 2, ErrorKind::InvalidArgument, "lemma_a3_rate: need at least two dampings");
    for (double th : thetas) require(th >= 4.0, ErrorKind::InvalidArgument, "lemma_a3_rate: theta >= 4");
    const std::size_t n = thetas.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double th : thetas) {
        const double x = std::log(th), y = std::log(lemma_a2_closed(th, m, alpha0));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    require(den > 0.0, ErrorKind::InvalidArgument, "lemma_a3_rate: dampings must be distinct");
    return (n * sxy - sx * sy) / den;
}

NormTriple compute_norms(double theta, const SpectralMeasure& m, double alpha0,
                         const std::map<PairKey, LambdaRange>& ranges) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "compute_norms: theta > 0");
    require_condition(m, alpha0);
    NormTriple out;
    // ∫∫ e^{-theta t} G(t,x) dx dt = ∫ t e^{-theta t} dt
    out.norm0 = 1.0 / (theta * theta);
    std::map<PairKey, LambdaRange> r = ranges;
    if (r.empty()) r[kAnyPair] = LambdaRange{};
    for (const auto& [key, range] : r) {
        out.norm1[key] = lemma_a1(theta, m, alpha0, range);
        out.norm2[key] = std::sqrt(lemma_a2_closed(theta, m, alpha0, range));
    }
    return out;
}

// ---------------------------------------------------------------------------
// certificate recursion

namespace {

struct Node {
    int label = 0; // original index, 0 for composites
    int first = -1;
    int second = -1;
};

struct Slot {
    int cls = 0;
    PairKey pair{0, 0};
};

struct Candidate {
    std::map<int, Slot> assign; // node id -> class
    int case3 = 0;
    std::vector<std::string> trace;
};

struct LivePair {
    int a, b; // node ids
    PairKey key;
};

class Recursion {
public:
    explicit Recursion(int size) {
        for (int l = 0; l <= size; ++l) nodes_.push_back(Node{l, -1, -1});
    }

    std::vector<Candidate> run(std::vector<int> A, std::vector<int> B, std::vector<LivePair> pairs) {
        if (A.empty() && B.empty()) return {Candidate{}};
        auto partner = [&](int node, PairKey* key) {
            for (const auto& p : pairs) {
                if (p.a == node || p.b == node) {
                    if (key) *key = p.key;
                    return p.a == node ? p.b : p.a;
                }
            }
            fail(ErrorKind::InvalidPairing, "certificate: unpaired index");
        };
        auto contains = [](const std::vector<int>& c, int x) { return std::find(c.begin(), c.end(), x) != c.end(); };

        if (!B.empty() && contains(B, partner(B.back(), nullptr))) return peel(B, A, pairs, false, "case1");
        if (!A.empty() && contains(A, partner(A.back(), nullptr))) return peel(A, B, pairs, true, "case1");
        require(!A.empty() && !B.empty(), ErrorKind::InvalidPairing, "certificate: inconsistent chains");
        PairKey key;
        if (partner(B.back(), &key) == A.back()) {
            const int ea = A.back(), eb = B.back();
            A.pop_back();
            B.pop_back();
            drop_pair(pairs, ea);
            auto subs = run(A, B, pairs);
            for (auto& c : subs) {
                c.assign[ea] = Slot{2, key};
                c.assign[eb] = Slot{2, key};
                c.trace.push_back("case2 " + describe(key));
            }
            return subs;
        }
        // Case 3: peel the end of B (partner inside A) or the end of A (partner inside B)
        auto left = peel(B, A, pairs, false, "case3a");
        auto right = peel(A, B, pairs, true, "case3b");
        for (auto& c : left) ++c.case3;
        for (auto& c : right) ++c.case3;
        left.insert(left.end(), right.begin(), right.end());
        return left;
    }

    const Node& node(int id) const { return nodes_[id]; }

private:
    std::vector<Node> nodes_;

    static std::string describe(const PairKey& k) {
        return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
    }

    static void drop_pair(std::vector<LivePair>& pairs, int node) {
        pairs.erase(std::remove_if(pairs.begin(), pairs.end(), [&](const LivePair& p) { return p.a == node || p.b == node; }),
                    pairs.end());
    }

    // remove the end of chain C (paired with j0 in C or in the other chain O), integrate out j0
    std::vector<Candidate> peel(std::vector<int> C, std::vector<int> O, std::vector<LivePair> pairs, bool c_is_a,
                                const std::string& tag) {
        const int e = C.back();
        PairKey key{0, 0};
        int j0 = -1;
        for (const auto& p : pairs)
            if (p.a == e || p.b == e) {
                j0 = p.a == e ? p.b : p.a;
                key = p.key;
            }
        C.pop_back();
        drop_pair(pairs, e);
        // j0 lives in C (domestic) or in O (Case 3)
        std::vector<int>& H = std::find(C.begin(), C.end(), j0) != C.end() ? C : O;
        const bool home_is_c = &H == &C;
        auto finish = [&](std::vector<Candidate> subs, int composite) {
            for (auto& c : subs) {
                if (composite >= 0) {
                    const Slot s = c.assign.at(composite);
                    c.assign.erase(composite);
                    const Node& n = nodes_[composite];
                    if (s.cls == 0) {
                        c.assign[n.first] = Slot{0, {0, 0}};
                        c.assign[n.second] = Slot{0, {0, 0}};
                    } else if (s.cls == 1) {
                        c.assign[n.first] = Slot{2, s.pair};
                        c.assign[n.second] = Slot{2, s.pair};
                    } else {
                        c.assign[n.first] = Slot{0, {0, 0}};
                        c.assign[n.second] = Slot{2, s.pair};
                    }
                    c.trace.push_back(tag + " merge class " + std::to_string(s.cls));
                }
                c.assign[e] = Slot{1, key};
                c.trace.push_back(tag + " peel " + describe(key));
            }
            return subs;
        };
        if (home_is_c && !H.empty() && H.back() == j0) {
            H.pop_back();
            auto subs = c_is_a ? run(C, O, pairs) : run(O, C, pairs);
            for (auto& c : subs) c.assign[j0] = Slot{0, {0, 0}};
            return finish(std::move(subs), -1);
        }
        const auto it = std::find(H.begin(), H.end(), j0);
        require(it != H.end() && it + 1 != H.end(), ErrorKind::InvalidPairing, "certificate: merge neighbour missing");
        const int next = *(it + 1);
        const int comp = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{0, j0, next});
        *it = comp;
        H.erase(it + 1);
        for (auto& p : pairs) {
            if (p.a == next) p.a = comp;
            if (p.b == next) p.b = comp;
        }
        auto subs = c_is_a ? run(C, O, pairs) : run(O, C, pairs);
        return finish(std::move(subs), comp);
    }
};

BoundCertificate materialize(const Candidate& c, const std::vector<NormTriple>& norms) {
    BoundCertificate out;
    double bound = 1.0, refined = 1.0;
    for (const auto& [id, s] : c.assign) {
        const NormTriple& nt = norms.at(id - 1);
        if (s.cls == 0) {
            out.q0.push_back(id);
            bound *= nt.norm0;
            refined *= nt.norm0;
        } else if (s.cls == 1) {
            out.q1.push_back({id, s.pair});
            bound *= 2.0 * nt.n1(s.pair);
            refined *= nt.n1(s.pair);
        } else {
            out.q2.push_back({id, s.pair});
            bound *= nt.n2(s.pair);
            refined *= nt.n2(s.pair);
        }
    }
    out.bound = bound;
    out.case3_splits = c.case3;
    out.refined_valid = c.case3 == 0;
    out.refined_bound = out.refined_valid ? refined : bound;
    out.trace = c.trace;
    return out;
}

} // namespace

BoundCertificate theorem3_certificate(int n1, int n2, const PairPartition& pairing, const std::vector<NormTriple>& norms) {
    require(n1 >= 0 && n2 >= 0 && (n1 + n2) % 2 == 0 && n1 + n2 >= 2, ErrorKind::InvalidPairing,
            "certificate: n1 + n2 must be a positive even number");
    const int size = n1 + n2;
    require(pairing.order() * 2 == size && pairing.valid(), ErrorKind::InvalidPairing, "certificate: invalid pairing");
    require(static_cast<int>(norms.size()) == size, ErrorKind::DimensionMismatch, "certificate: one NormTriple per index");
    std::vector<int> A, B;
    for (int l = 1; l <= n1; ++l) A.push_back(l);
    for (int l = n1 + 1; l <= size; ++l) B.push_back(l);
    std::vector<LivePair> live;
    for (const auto& [j, k] : pairing.pairs) live.push_back({j, k, {j, k}});
    Recursion rec(size);
    const auto cands = rec.run(A, B, live);
    BoundCertificate best;
    bool first = true;
    std::vector<double> all;
    for (const auto& c : cands) {
        BoundCertificate b = materialize(c, norms);
        all.push_back(b.bound);
        if (first || b.bound > best.bound) {
            best = b;
            first = false;
        }
    }
    if (cands.size() > 1) best.alternatives = all;
    std::sort(best.q0.begin(), best.q0.end());
    return best;
}

bool certificate_valid(const BoundCertificate& c, int n) {
    if (c.q0.size() != c.q1.size() || c.q2.size() % 2 != 0) return false;
    if (static_cast<int>(c.q0.size() + c.q2.size() / 2) != n) return false;
    std::set<int> seen;
    for (int l : c.q0) seen.insert(l);
    for (const auto& o : c.q1) seen.insert(o.index);
    for (const auto& o : c.q2) seen.insert(o.index);
    if (static_cast<int>(seen.size()) != 2 * n || *seen.begin() != 1 || *seen.rbegin() != 2 * n) return false;
    std::map<PairKey, int> c1, c2;
    for (const auto& o : c.q1) ++c1[o.pair];
    for (const auto& o : c.q2) ++c2[o.pair];
    for (const auto& [k, v] : c1)
        if (v != 1 || c2.count(k)) return false;
    for (const auto& [k, v] : c2)
        if (v != 2) return false;
    return static_cast<int>(c1.size() + c2.size()) == n;
}

std::string to_record(const BoundCertificate& c) {
    std::ostringstream os;
    os.precision(12);
    os << "Q0={";
    for (std::size_t i = 0; i < c.q0.size(); ++i) os << (i ? "," : "") << c.q0[i];
    auto occ = [&](const std::vector<Occurrence>& q) {
        for (std::size_t i = 0; i < q.size(); ++i)
            os << (i ? "," : "") << q[i].index << ":(" << q[i].pair.first << "," << q[i].pair.second << ")";
    };
    os << "} Q1={";
    occ(c.q1);
    os << "} Q2={";
    occ(c.q2);
    os << "} bound=" << c.bound;
    if (c.refined_valid) os << " refined=" << c.refined_bound;
    if (c.case3_splits) os << " case3=" << c.case3_splits;
    return os.str();
}

Domination bound_domination_check(BaseCase which, double theta, const SpectralMeasure& m, double alpha0) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "domination: theta > 0");
    require(m.dim() == 1, ErrorKind::DimensionMismatch, "domination: d = 1");
    Domination out;
    if (m.is_zero()) return out;
    const NormTriple nt = compute_norms(theta, m, alpha0);
    PairPartition D{{{1, 2}}};
    int n1 = 1, n2 = 1;
    if (which == BaseCase::Left20) n1 = 2, n2 = 0;
    if (which == BaseCase::Right02) n1 = 0, n2 = 2;
    const BoundCertificate c = theorem3_certificate(n1, n2, D, {nt, nt});
    out.bound = c.bound;
    out.refined_bound = c.refined_bound;
    if (which == BaseCase::Split11) {
        out.lhs = lemma_a2(theta, m, alpha0).direct;
        return out;
    }
    // one chain: ∫ G_1(s1, x1) G_2(s2 - s1, x2 - x1) |s2 - s1|^{-a0} gamma(x2 - x1), in increment variables
    const GreenSpec g{1, 0.0};
    const double T = 60.0 / theta;
    const double mass = quad::gk(
                            [&](double s) {
                                return std::exp(-theta * s) *
                                       quad::gk([&](double x) { return green_eval(g, s, x); }, -s, s, 1e-12).value;
                            },
                            0.0, T, 1e-12)
                            .value;
    auto Y = [&](double v) {
        if (m.is_dirac()) return green_eval(g, v, 0.0);
        if (m.is_riesz()) {
            auto f = [&](double y) { return green_eval(g, v, y); };
            return 2.0 * m.riesz_constant() * quad::power_singular(f, m.alpha(), v, 1e-11).value;
        }
        return quad::gk([&](double y) { return gamma_eval(m, y) * green_eval(g, v, y); }, -v, v, 1e-11).value;
    };
    const double inc =
        quad::power_singular([&](double v) { return std::exp(-theta * v) * Y(v); }, alpha0, T, 1e-11).value;
    out.lhs = mass * inc;
    return out;
}

} // namespace stratlab
