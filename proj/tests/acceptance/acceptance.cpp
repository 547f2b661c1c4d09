// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exit status is nonzero when any run criterion fails.
#include "oracles.hpp"
#include "windingq/exactlin/poly.hpp"
#include "windingq/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace windingq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void print_line(int number, const std::string& title, const Outcome& o, double secs)
{
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << secs;
    if (!o.pass)
        ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << number << " (" << title << ") [" << os.str()
              << " s]" << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
}

void run(int number, const std::string& title, const std::function<Outcome()>& body)
{
    Outcome o;
    const auto t0 = Clock::now();
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    print_line(number, title, o, seconds_since(t0));
}

void skip(int number, const std::string& title, const std::string& why)
{
    std::cout << "SKIP  criterion " << number << " (" << title << "): " << why << std::endl;
}

struct Level {
    explicit Level(long n)
        : space(ManinSpace::build(n)), hecke(space), classes(isotypic_decomposition(space, hecke)),
          algebra(HeckeAlgebra::build(hecke)), winding(winding_element(space, hecke, algebra))
    {
        set_rank_zero_flags(classes, winding);
    }

    ManinSpace space;
    HeckeCache hecke;
    std::vector<IsotypicClass> classes;
    HeckeAlgebra algebra;
    WindingData winding;
};

Outcome structural()
{
    Outcome o;
    for (long n : {11L, 14L, 15L, 17L, 19L, 23L, 37L, 389L}) {
        const auto t0 = Clock::now();
        const ManinSpace s = ManinSpace::build(n);
        const std::size_t h = s.cuspidal().rank();
        const std::size_t hp = plus_part(IntLattice::full(h), s.star_on_cuspidal()).rank();
        const double t = seconds_since(t0);
        const long g = oracle::genus_x0(n);
        const double limit = n == 389 ? 60.0 : 1.0;
        if (h != static_cast<std::size_t>(2 * g) || hp != static_cast<std::size_t>(g) || t >= limit) {
            o.pass = false;
            o.detail += "N=" + std::to_string(n) + " rank(H)=" + std::to_string(h) + " rank(H+)=" +
                        std::to_string(hp) + " genus=" + std::to_string(g) + " time=" + std::to_string(t) + "; ";
        }
    }
    return o;
}

Outcome hecke_oracle()
{
    Outcome o;
    const auto t0 = Clock::now();
    const ManinSpace s = ManinSpace::build(11);
    HeckeCache cache(s);
    for (long p = 2; p <= 50; ++p) {
        if (!oracle::is_prime(p) || p == 11)
            continue;
        const Int a = oracle::trace_of_frobenius(oracle::kCurve11a, p);
        const ZPoly expected{a * a, -2 * a, 1};
        if (charpoly(cache.cuspidal(p)) != expected) {
            o.pass = false;
            o.detail += "p=" + std::to_string(p) + " ";
        }
    }
    if (seconds_since(t0) >= 30.0) {
        o.pass = false;
        o.detail += "over 30 s";
    }
    return o;
}

Outcome dualities()
{
    Outcome o;
    for (long n = 1; n <= 60; ++n) {
        const ManinSpace s = ManinSpace::build(n);
        if (s.genus() == 0)
            continue;
        HeckeCache cache(s);
        const HeckeAlgebra t = HeckeAlgebra::build(cache);
        const Int d = qexp_lattice(t, cache, t.bound()).pairing_det();
        if (abs(d) != 1) {
            o.pass = false;
            o.detail += "N=" + std::to_string(n) + " det=" + d.get_str() + " ";
        }
    }
    return o;
}

Outcome winding()
{
    Outcome o;
    for (long n : {11L, 37L, 389L}) {
        const auto t0 = Clock::now();
        const ManinSpace s = ManinSpace::build(n);
        HeckeCache cache(s);
        const HeckeAlgebra t = HeckeAlgebra::build(cache);
        const WindingData w = winding_element(s, cache, t);
        const double secs = seconds_since(t0);
        const long expected = (n - 1) / std::gcd(n - 1, 12L);
        const bool fixed = vec_mul(w.e, s.star_on_cuspidal()) == w.e;
        if (w.order != expected || !fixed || (n == 389 && secs >= 300.0)) {
            o.pass = false;
            o.detail += "N=" + std::to_string(n) + " n=" + w.order.get_str() + " expected " +
                        std::to_string(expected) + (fixed ? "" : " star-moved") + "; ";
        }
    }
    return o;
}

Outcome l_ratio_fixture()
{
    const Level d(11);
    const Rat exact = ratio_index(d.space, d.classes, 0, d.winding);
    const double numeric = oracle::l_value_at_one(oracle::kCurve11a, 11, 400) / oracle::real_period(oracle::kCurve11a);
    Outcome o;
    const double rel = std::abs(numeric - exact.get_d()) / exact.get_d();
    o.pass = exact == Rat(1, 5) && rel < 1e-4;
    std::ostringstream os;
    os.precision(12);
    os << "ratio_index=" << exact.get_str() << " numeric=" << numeric << " rel=" << rel;
    o.detail = os.str();
    return o;
}

Outcome level389()
{
    const auto t0 = Clock::now();
    const Level d(389);
    Outcome o;
    std::size_t found = 0;
    for (std::size_t i = 0; i < d.classes.size(); ++i) {
        const IsotypicClass& c = d.classes[i];
        if (!c.rank_zero)
            continue;
        ++found;
        const FactorReport f = l_ratio(d.space, d.algebra, d.classes, i, d.winding);
        o.detail = c.label + " dim=" + std::to_string(c.dim()) + " factor1=" + f.factor1.get_str() +
                   " odd part " + odd_part(f.factor1).get_str();
        o.pass = c.dim() == 40 && odd_part(f.factor1) == 5;
    }
    if (found != 1) {
        o.pass = false;
        o.detail += " rank-zero classes: " + std::to_string(found);
    }
    if (seconds_since(t0) >= 900.0)
        o.pass = false;
    return o;
}

bool squarefree(long n)
{
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return true;
}

std::vector<Int> odd_primes(const Int& x)
{
    std::vector<Int> out;
    for (const auto& p : prime_divisors(x))
        if (p != 2)
            out.push_back(p);
    return out;
}

struct SmallLevelSweep {
    Outcome biconditional;
    Outcome cross_check;
    Outcome lemma;
};

SmallLevelSweep sweep()
{
    SmallLevelSweep out;
    std::size_t levels = 0, classes = 0;
    for (long n = 1; n <= 60; ++n) {
        Level d(n);
        if (d.space.genus() == 0)
            continue;
        ++levels;
        const IntLattice he = h_bracket(d.algebra, d.classes, d.winding.ie);
        if (!plus_part(he, d.space.star_on_cuspidal()).contains(d.winding.ime)) {
            out.lemma.pass = false;
            out.lemma.detail += "N=" + std::to_string(n) + " ";
        }
        if (!squarefree(n))
            continue;
        const QExpLattice qe = qexp_lattice(d.algebra, d.hecke, d.algebra.bound());
        const IntLattice pos = subspace_forms(qe, rank_positive_ideal(d.algebra, d.classes));
        for (std::size_t i = 0; i < d.classes.size(); ++i) {
            const IsotypicClass& c = d.classes[i];
            if (!c.rank_zero)
                continue;
            ++classes;
            const FactorReport f = l_ratio(d.space, d.algebra, d.classes, i, d.winding);
            const CongruenceReport m = congruence_module(subspace_forms(qe, annihilator(d.algebra, c.lattice)), pos);
            if (odd_primes(f.factor1) != odd_primes(m.order)) {
                out.biconditional.pass = false;
                out.biconditional.detail += c.label + " factor1=" + f.factor1.get_str() + " module=" +
                                            m.order.get_str() + "; ";
            }
            if (odd_part(f.ratio_product) != odd_part(f.ratio_index)) {
                out.cross_check.pass = false;
                out.cross_check.detail += c.label + " product=" + f.ratio_product.get_str() + " index=" +
                                          f.ratio_index.get_str() + "; ";
            }
        }
    }
    const std::string checked = std::to_string(classes) + " rank-zero classes checked";
    out.biconditional.detail = checked + (out.biconditional.pass ? "" : "; " + out.biconditional.detail);
    out.cross_check.detail = checked + (out.cross_check.pass ? "" : "; " + out.cross_check.detail);
    out.lemma.detail = std::to_string(levels) + " levels checked" + (out.lemma.pass ? "" : "; " + out.lemma.detail);
    return out;
}

Outcome stretch()
{
    const AnalysisReport rep = analyze(1751);
    Outcome o;
    o.pass = false;
    for (const auto& a : rep.analyses) {
        const IsotypicClass& c = rep.classes[a.class_index];
        if (c.label != "1751C")
            continue;
        if (!a.factors) {
            o.detail = "1751C is not rank zero";
            return o;
        }
        const Int& f1 = a.factors->factor1;
        o.detail = "factor1=" + f1.get_str();
        const bool divisible = mpz_divisible_ui_p(f1.get_mpz_t(), 101) && mpz_divisible_ui_p(f1.get_mpz_t(), 5);
        bool routed = false;
        for (const auto& v : a.visibility) {
            if (v.q != 101)
                continue;
            o.detail += " q=101 -> " + std::string(to_string(v.prediction));
            int w17 = 0;
            for (const auto& s : v.w_p)
                if (s.q == 17)
                    w17 = s.sign;
            routed = v.prediction == Prediction::ComponentGroupDivisible && v.component_prime == 17 && w17 == -1;
            o.detail += " at p=" + std::to_string(v.component_prime) + " w17=" + std::to_string(w17);
        }
        o.pass = divisible && routed;
        return o;
    }
    o.detail = "no class labelled 1751C";
    return o;
}

} // namespace

int main()
{
    run(1, "structural ranks", structural);
    run(2, "Hecke charpolys at level 11", hecke_oracle);
    run(3, "perfect pairing for N <= 60", dualities);
    run(4, "winding element denominators", winding);
    run(5, "L-ratio at level 11", l_ratio_fixture);
    run(6, "level 389 odd part of factor1", level389);
    // Criteria 7 to 9 share one pass over N <= 60; the time shown is that of the whole pass.
    SmallLevelSweep s;
    const auto t0 = Clock::now();
    try {
        s = sweep();
    } catch (const std::exception& e) {
        const Outcome failed{false, std::string("exception: ") + e.what()};
        s = {failed, failed, failed};
    }
    const double secs = seconds_since(t0);
    print_line(7, "factor1 primes are congruence primes, squarefree N <= 60", s.biconditional, secs);
    print_line(8, "odd parts of the two ratios agree, squarefree N <= 60", s.cross_check, secs);
    print_line(9, "Ime lies in the plus part of H[I_e], N <= 60", s.lemma, secs);
#ifdef WINDINGQ_LONG_TESTS
    run(10, "level 1751 stretch fixture", stretch);
#else
    (void)stretch;
    skip(10, "level 1751 stretch fixture", "configure with -DWINDINGQ_LONG_TESTS=ON to run");
#endif
    std::cout << (failures == 0 ? "all run criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
