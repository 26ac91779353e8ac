// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace qt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_seconds > 0) out.require(secs < limit_seconds, "time limit exceeded");
    if (!out.pass) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << title << "  [" << timing;
    if (limit_seconds > 0) std::cout << " / limit " << limit_seconds << "s";
    std::cout << "]  " << out.detail.str() << std::endl;
}

bool certified(const QuadraticSystem& sys, const NormalFormResult& r) {
    return r.transform.r.is_zero() && substitute_and_truncate(sys, r.transform) == r.normal;
}

Matrix operator_power(std::size_t n, const MatrixOperators& ops, std::size_t k) {
    return operator_matrix(n, [&](const Matrix& p) { return ops.L(p, k); });
}

constexpr std::size_t kSystemsPerDimension = 125;  // 4 dimensions -> 500 per kind

}  // namespace

int main() {
    criterion(1, "example 1, continuous type I", 1.0, [](Outcome& o) {
        const auto sys = example_continuous();
        const auto r = brunovsky_cont(sys, ContinuousForm::TypeI);
        // x1' = x2 + x2^2/2, x2' = nu;  xi1 = x1, xi2 = x2 + x2^2/2, mu = nu
        o.require(r.normal.A() == shift_matrix(2) && r.normal.b() == last_basis_vector(2), "linear part");
        o.require(r.normal.F(1) == SymMatrix::diagonal({0, q(1, 2)}), "Fbar_1");
        o.require(r.normal.F(2).is_zero() && r.normal.G().is_zero(), "Fbar_2, Gbar");
        o.require(r.transform.P[0].is_zero() && r.transform.P[1] == SymMatrix::diagonal({0, q(1, 2)}), "P");
        o.require(r.transform.Q.is_zero() && r.transform.r.is_zero(), "feedback");
        o.require(certified(sys, r), "oracle certification");
        o.detail << "Fbar_1 = diag(0, 1/2), P_2 = diag(0, 1/2)";
    });

    criterion(2, "example 1, continuous type II", 0, [](Outcome& o) {
        const auto sys = example_continuous();
        const auto r = brunovsky_cont(sys, ContinuousForm::TypeII);
        o.require(r.normal == sys, "system changed");
        o.require(r.transform.is_identity(), "transform not identity");
        o.require(certified(sys, r), "oracle certification");
        o.detail << "unchanged, identity transform";
    });

    criterion(3, "example 2, discrete", 1.0, [](Outcome& o) {
        const auto sys = example_discrete();
        const auto r = brunovsky_disc(sys);
        o.require(r.form_type == FormType::Linearized, "not linearized");
        o.require(r.normal == QuadraticSystem::linear_brunovsky(Kind::Discrete, 2), "normal form");
        o.require(r.transform.P[0] == SymMatrix::diagonal({2, 1}), "P_1");
        o.require(r.transform.P[1] == sym({{-1, 0}, {0, 1}}), "P_2");
        o.require(r.transform.Q == sym({{0, 0}, {0, 1}}), "Q");
        o.require(certified(sys, r), "oracle certification");
        o.detail << "P_1 = diag(2,1), P_2 = diag(-1,1), Q = diag(0,1)";
    });

    // Criteria 4 and 5 share the corpus.
    struct Counts {
        std::size_t systems = 0, max_type1 = 0, max_type2 = 0, max_disc = 0;
        std::size_t sum_type1 = 0, sum_type2 = 0, sum_disc = 0;
        bool bounds_ok = true, shape_ok = true;
    } counts;

    criterion(4, "closed-form maps agree with substitution; all outputs certified", 60.0, [&](Outcome& o) {
        std::size_t maps = 0, certs = 0;
        for (std::size_t n = 2; n <= 5; ++n)
            for (std::size_t s = 0; s < kSystemsPerDimension; ++s) {
                const std::uint64_t seed = 10000 * n + s;
                const double density = 0.3 + 0.1 * static_cast<double>(s % 7);

                const auto cs = random_system(n, Kind::Continuous, seed, density);
                const auto ct = random_transform(n, seed + 5000, density, true);
                o.require(equivalent_system_cont(cs, ct) == substitute_and_truncate(cs, ct), "continuous map");
                const auto r1 = brunovsky_cont(cs, ContinuousForm::TypeI);
                const auto r2 = brunovsky_cont(cs, ContinuousForm::TypeII);
                o.require(certified(cs, r1) && certified(cs, r2), "continuous certification");

                const auto ds = random_system(n, Kind::Discrete, seed, density);
                const auto dt = random_transform(n, seed + 5000, density, false);
                o.require(equivalent_system_disc(ds, dt) == substitute_and_truncate(ds, dt), "discrete map");
                const auto rd = brunovsky_disc(ds);
                o.require(certified(ds, rd), "discrete certification");
                maps += 2;
                certs += 3;

                const std::size_t bound_c = n * (n - 1) / 2, bound_d = n * (n + 1) / 2;
                const std::size_t c1 = count_nonzero_quadratic_terms(r1.normal);
                const std::size_t c2 = count_nonzero_quadratic_terms(r2.normal);
                const std::size_t cd = count_nonzero_quadratic_terms(rd.normal);
                counts.bounds_ok = counts.bounds_ok && c1 <= bound_c && c2 <= bound_c && cd <= bound_d;
                bool disc_bilinear = rd.normal.h()->is_zero();
                for (std::size_t i = 1; i <= n; ++i) disc_bilinear = disc_bilinear && rd.normal.F(i).is_zero();
                counts.shape_ok = counts.shape_ok && disc_bilinear && r1.normal.G().is_zero();
                counts.max_type1 = std::max(counts.max_type1, c1);
                counts.max_type2 = std::max(counts.max_type2, c2);
                counts.max_disc = std::max(counts.max_disc, cd);
                counts.sum_type1 += c1;
                counts.sum_type2 += c2;
                counts.sum_disc += cd;
                ++counts.systems;
            }
        o.detail << counts.systems << " systems per kind, " << maps << " map comparisons, " << certs
                 << " certified outputs";
    });

    criterion(5, "nonlinear term counts within bounds", 0, [&](Outcome& o) {
        o.require(counts.systems == 4 * kSystemsPerDimension, "corpus incomplete");
        o.require(counts.bounds_ok, "bound violated");
        o.require(counts.shape_ok, "discrete output not purely bilinear");
        o.detail << "max terms at n=5 bound 10/15: type1 " << counts.max_type1 << ", type2 " << counts.max_type2
                 << ", discrete " << counts.max_disc << "; totals " << counts.sum_type1 << "/" << counts.sum_type2
                 << "/" << counts.sum_disc;
    });

    criterion(6, "operator properties, n = 2..5", 30.0, [](Outcome& o) {
        CoefficientSampler s(606, 0.8);
        for (std::size_t n = 2; n <= 5; ++n) {
            const MatrixOperators cont(OperatorMode::Continuous, n), disc(OperatorMode::Discrete, n);
            o.require(operator_power(n, cont, 2 * n - 1).is_zero(), "continuous nilpotency");
            o.require(!operator_power(n, cont, 2 * n - 2).is_zero(), "continuous index");
            o.require(operator_power(n, disc, n).is_zero(), "discrete nilpotency");
            o.require(!operator_power(n, disc, n - 1).is_zero(), "discrete index");
            o.require(nullity(operator_power(n, cont, 1)) == n, "continuous kernel");
            o.require(nullity(operator_power(n, disc, 1)) == 2 * n - 1, "discrete kernel");
            const Matrix x0c = operator_matrix(n, [&](const Matrix& p) { return cont.X(0, p); });
            const Matrix x0d = operator_matrix(n, [&](const Matrix& p) { return disc.X(0, p); });
            o.require(rank(x0c) == n * n, "continuous X0 rank");
            o.require(rank(x0d) == n * (n + 1) / 2, "discrete X0 rank");
            for (int k = 0; k < 100; ++k) {
                const Matrix p = s.matrix(n, n);
                o.require(cont.solve_X0(cont.X(0, p)) == p, "X0 round trip");
            }
        }
        o.detail << "nilpotency, kernels n and 2n-1, X0 ranks, 400 round trips";
    });

    criterion(7, "normal form invariant under pre-transformation", 0, [](Outcome& o) {
        std::size_t pairs_c = 0, pairs_d = 0;
        for (std::size_t n = 2; n <= 5; ++n)
            for (std::uint64_t s = 0; s < 30; ++s) {
                const std::uint64_t seed = 70000 + 100 * n + s;
                const auto cs = random_system(n, Kind::Continuous, seed, 0.6);
                const auto cmoved = substitute_and_truncate(cs, random_transform(n, seed + 1, 0.6, false));
                for (auto form : {ContinuousForm::TypeI, ContinuousForm::TypeII})
                    o.require(brunovsky_cont(cs, form).normal == brunovsky_cont(cmoved, form).normal,
                              "continuous normal form moved");
                ++pairs_c;
                const auto ds = random_system(n, Kind::Discrete, seed, 0.6);
                const auto dmoved = substitute_and_truncate(ds, random_transform(n, seed + 1, 0.6, false));
                o.require(brunovsky_disc(ds).normal == brunovsky_disc(dmoved).normal, "discrete normal form moved");
                ++pairs_d;
            }
        o.detail << pairs_c << " continuous pairs (both forms), " << pairs_d << " discrete pairs";
    });

    criterion(8, "linear reduction to the shift pair", 0, [](Outcome& o) {
        std::size_t reduced = 0, rejected = 0;
        for (std::size_t n = 2; n <= 6; ++n)
            for (std::uint64_t s = 0; s < 25; ++s) {
                const std::uint64_t seed = 80000 + 100 * n + s;
                const auto [a, b] = random_controllable_pair(n, seed);
                const Kind kind = s % 2 ? Kind::Discrete : Kind::Continuous;
                const auto sys = with_linear_part(random_system(n, kind, seed, 0.5), a, b);
                const auto red = reduce_linear(sys);
                // direct matrix check, independent of the substitution engine
                const Matrix t_inv = inverse(red.transform.T);
                const Matrix a2 = t_inv * (a * red.transform.T + b * red.transform.v.transpose());
                o.require(a2 == shift_matrix(n) && t_inv * b == last_basis_vector(n), "pair not reduced");
                o.require(red.system.A() == shift_matrix(n) && red.system.b() == last_basis_vector(n),
                          "reduced system");
                ++reduced;

                const auto [ua, ub] = random_uncontrollable_pair(n, seed);
                try {
                    linear_brunovsky(ua, ub);
                    o.require(false, "uncontrollable pair accepted");
                } catch (const not_controllable&) {
                    ++rejected;
                }
            }
        o.detail << reduced << " controllable pairs reduced, " << rejected << " uncontrollable pairs rejected";
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
