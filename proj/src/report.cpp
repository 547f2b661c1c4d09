#include "windingq/report.hpp"

#include "windingq/cache.hpp"
#include "windingq/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace windingq {

const char* to_string(Tri t)
{
    switch (t) {
    case Tri::True:
        return "true";
    case Tri::False:
        return "false";
    default:
        return "unknown";
    }
}

const char* to_string(Prediction p)
{
    switch (p) {
    case Prediction::ShaDivisible:
        return "Sha_divisible";
    case Prediction::ComponentGroupDivisible:
        return "ComponentGroup_divisible";
    default:
        return "Inconclusive";
    }
}

Tri VisibilityChecklist::check(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return c.value;
    return Tri::Unknown;
}

bool mazur_irreducible(long prime_level, const Int& q)
{
    const long m = prime_level - 1;
    const long numer = m / std::gcd(m, 12L);
    const Int bad = Int(2) * numer;
    return !mpz_divisible_p(bad.get_mpz_t(), q.get_mpz_t());
}

namespace {

Tri tri(bool b)
{
    return b ? Tri::True : Tri::False;
}

bool divides(const Int& q, long n)
{
    const Int v(n);
    return mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t()) != 0;
}

int sign_at(const IsotypicClass& c, long p)
{
    for (const auto& a : c.atkin_lehner)
        if (a.q % p == 0)
            return a.sign;
    return 0;
}

} // namespace

VisibilityChecklist visibility_checklist(const VisibilityInputs& in)
{
    VisibilityChecklist out;
    const long n = in.level;
    const Int& q = in.q;
    out.level = n;
    out.label = in.f->label;
    out.q = q;
    out.w_p = in.f->atkin_lehner;

    const bool q_divides = mpz_divisible_p(in.factor1.get_mpz_t(), q.get_mpz_t()) != 0;
    out.checks.push_back({"q_divides_factor1", tri(q_divides)});
    out.vacuous = !q_divides;

    const bool odd_coprime = q != 2 && !divides(q, n);
    out.checks.push_back({"q_odd_and_coprime_to_2N", tri(odd_coprime)});

    const bool prime_level = is_prime_long(n);
    Tri irreducible = Tri::Unknown;
    if (prime_level) {
        out.checks.push_back({"q_coprime_to_N_minus_1", tri(!divides(q, n - 1))});
        const bool mazur = mazur_irreducible(n, q);
        out.checks.push_back({"mazur_irreducibility", tri(mazur)});
        irreducible = tri(mazur);
    }

    bool signs_ok = true;
    bool squares_ok = true;
    for (long p : prime_factors(n)) {
        const int w = sign_at(*in.f, p);
        Tri v = Tri::Unknown;
        if (w != 0)
            v = tri(!divides(q, p + w));
        out.checks.push_back({"p_not_minus_wp_mod_q[" + std::to_string(p) + "]", v});
        signs_ok = signs_ok && v == Tri::True;
        if (n % (p * p) == 0) {
            const bool ok = !divides(q, p + 1);
            out.checks.push_back({"p_square_condition[" + std::to_string(p) + "]", tri(ok)});
            squares_ok = squares_ok && ok;
        }
    }

    // Lower-level congruences at primes p || N; unknown at primes whose square divides N.
    Tri lower = Tri::False;
    const VisibilityInputs::Partner* chosen = nullptr;
    for (long p : prime_factors(n)) {
        if (n % (p * p) == 0) {
            if (lower == Tri::False)
                lower = Tri::Unknown;
            continue;
        }
        for (const auto& partner : in.partners) {
            if (partner.p != p || !mpz_divisible_p(partner.order.get_mpz_t(), q.get_mpz_t()))
                continue;
            lower = Tri::True;
            const bool star = sign_at(*in.f, p) == -1;
            if (!chosen || (star && sign_at(*in.f, chosen->p) != -1))
                chosen = &partner;
        }
    }
    out.checks.push_back({"lower_level_congruence_found", lower});

    Tri partner_irreducible = Tri::Unknown;
    if (chosen) {
        out.partner = chosen->cls->label;
        const bool wp_minus = sign_at(*in.f, chosen->p) == -1;
        out.checks.push_back({"wp_minus_one_at_that_p", tri(wp_minus)});
        const auto m = chosen->cls->newform_level;
        if (m && is_prime_long(*m) && mazur_irreducible(*m, q))
            partner_irreducible = Tri::True;
        if (in.assume_irreducible)
            partner_irreducible = Tri::True;
        out.checks.push_back({"partner_irreducibility", partner_irreducible});
        // A_f[q] and A_h[q] are isomorphic when both are irreducible.
        if (irreducible == Tri::Unknown && partner_irreducible == Tri::True)
            irreducible = Tri::True;
    }
    if (irreducible == Tri::Unknown && in.assume_irreducible)
        irreducible = Tri::True;
    out.checks.push_back({"galois_irreducibility", irreducible});

    out.prediction = Prediction::Inconclusive;
    if (out.vacuous || !odd_coprime || !signs_ok || irreducible != Tri::True)
        return out;
    if (prime_level) {
        if (out.check("q_coprime_to_N_minus_1") == Tri::True && out.check("mazur_irreducibility") == Tri::True)
            out.prediction = Prediction::ShaDivisible;
        return out;
    }
    if (lower == Tri::False && squares_ok) {
        out.prediction = Prediction::ShaDivisible;
    } else if (lower == Tri::True && chosen && n % (chosen->p * chosen->p) != 0 &&
               sign_at(*in.f, chosen->p) == -1 && partner_irreducible == Tri::True) {
        out.prediction = Prediction::ComponentGroupDivisible;
        out.component_prime = chosen->p;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------

namespace {

struct Pipeline {
    std::optional<ManinSpace> space;
    std::optional<HeckeCache> hecke;
    bool cache_hit = false;
};

void open_space(long level, const AnalyzeOptions& opts, Pipeline& pl)
{
    if (opts.cache_dir) {
        if (auto entry = cache_load(*opts.cache_dir, level)) {
            try {
                pl.space.emplace(entry->space());
                pl.hecke.emplace(*pl.space);
                entry->seed(*pl.hecke);
                pl.cache_hit = true;
                return;
            } catch (const std::exception&) {
                pl.space.reset();
                pl.hecke.reset();
            }
        }
    }
    pl.space.emplace(ManinSpace::build(level));
    pl.hecke.emplace(*pl.space);
}

std::vector<IsotypicClass> decompose(const ManinSpace& space, HeckeCache& hecke, long max_prime)
{
    DecompOptions d;
    d.max_prime = max_prime;
    for (;;) {
        try {
            return isotypic_decomposition(space, hecke, d);
        } catch (const SeparationFailure&) {
            if (d.max_prime >= 1000)
                throw;
            d.max_prime *= 2;
        }
    }
}

[[noreturn]] void rethrow_with_class(const Error& e, const std::string& label)
{
    std::string what = e.what();
    const std::string prefix = e.module() + ": ";
    if (what.rfind(prefix, 0) == 0)
        what = what.substr(prefix.size());
    throw Error(e.module(), "class " + label + ": " + what);
}

// Integral forms killed by each class annihilator, per coefficient bound.
class FormsMemo {
public:
    FormsMemo(const AnalysisReport& rep, const HeckeAlgebra& algebra, HeckeCache& hecke)
        : rep_(rep), algebra_(algebra), hecke_(hecke), ideals_(rep.classes.size())
    {
    }

    const IntLattice& forms(std::size_t cls, long b)
    {
        auto key = std::make_pair(cls, b);
        auto it = forms_.find(key);
        if (it != forms_.end())
            return it->second;
        if (!ideals_[cls])
            ideals_[cls] = annihilator(algebra_, rep_.classes[cls].lattice);
        return forms_.emplace(key, subspace_forms(qexp(b), *ideals_[cls])).first->second;
    }

    const QExpLattice& qexp(long b)
    {
        auto it = qexp_.find(b);
        if (it == qexp_.end())
            it = qexp_.emplace(b, qexp_lattice(algebra_, hecke_, b)).first;
        return it->second;
    }

private:
    const AnalysisReport& rep_;
    const HeckeAlgebra& algebra_;
    HeckeCache& hecke_;
    std::vector<std::optional<IntLattice>> ideals_;
    std::map<long, QExpLattice> qexp_;
    std::map<std::pair<std::size_t, long>, IntLattice> forms_;
};

// Coprime-index congruences between f and each old class of newform level dividing N/p.
std::vector<VisibilityInputs::Partner> partners_for(const AnalysisReport& rep, std::size_t f, const Int& q,
                                                    long bound, FormsMemo& memo, std::vector<CongruenceReport>& log)
{
    std::vector<VisibilityInputs::Partner> out;
    const long n = rep.level;
    for (long p : prime_factors(n)) {
        if (n % (p * p) == 0)
            continue;
        for (std::size_t i = 0; i < rep.classes.size(); ++i) {
            const IsotypicClass& c = rep.classes[i];
            if (c.is_new || !c.newform_level || (n / p) % *c.newform_level != 0)
                continue;
            for (long b = bound;; b *= 2) {
                try {
                    CongruenceReport r = coprime_index_congruence(memo.forms(f, b), memo.forms(i, b), n, q.get_si());
                    r.first = rep.classes[f].label;
                    r.second = c.label;
                    out.push_back({&c, p, r.order});
                    log.push_back(std::move(r));
                    break;
                } catch (const BoundTooSmall&) {
                    if (b > 64 * bound)
                        throw;
                }
            }
        }
    }
    return out;
}

} // namespace

AnalysisReport analyze(long level, const AnalyzeOptions& opts)
{
    if (level < 1)
        throw std::invalid_argument("analyze: level must be positive");
    Pipeline pl;
    open_space(level, opts, pl);
    const ManinSpace& space = *pl.space;
    HeckeCache& hecke = *pl.hecke;

    AnalysisReport rep;
    rep.level = level;
    rep.genus = space.genus();
    rep.cache_hit = pl.cache_hit;
    if (opts.bound > 0 && opts.bound < sturm_bound(level))
        throw BoundTooSmall("--bound " + std::to_string(opts.bound) + " is below the Sturm bound " +
                            std::to_string(sturm_bound(level)));

    rep.classes = decompose(space, hecke, opts.max_prime);
    const HeckeAlgebra algebra = HeckeAlgebra::build(hecke, opts.bound);
    const WindingData w = winding_element(space, hecke, algebra, std::max(opts.max_prime, 97L));
    rep.cusp_order = w.order;
    rep.projector_prime = w.projector_prime;
    set_rank_zero_flags(rep.classes, w);

    if (opts.only_class &&
        std::none_of(rep.classes.begin(), rep.classes.end(),
                     [&](const IsotypicClass& c) { return c.label == *opts.only_class; }))
        throw Error("report", "no class labelled " + *opts.only_class + " at level " + std::to_string(level));

    FormsMemo memo(rep, algebra, hecke);
    IntLattice s_positive;
    if (rep.genus > 0)
        s_positive = subspace_forms(memo.qexp(algebra.bound()), rank_positive_ideal(algebra, rep.classes));

    for (std::size_t i = 0; i < rep.classes.size(); ++i) {
        const IsotypicClass& c = rep.classes[i];
        if (opts.only_class && c.label != *opts.only_class)
            continue;
        ClassAnalysis a;
        a.class_index = i;
        if (c.rank_zero) {
            try {
                a.factors = l_ratio(space, algebra, rep.classes, i, w);
                const IntLattice& s_f = memo.forms(i, algebra.bound());
                CongruenceReport cm = congruence_module(s_f, s_positive);
                cm.first = c.label;
                cm.second = "rank-positive";
                a.equivalence = factor_congruence_equivalence(level, a.factors->factor1, cm.order);
                a.congruences.push_back(std::move(cm));
                for (const auto& q : prime_divisors(a.factors->factor1)) {
                    if (q == 2)
                        continue;
                    VisibilityInputs in;
                    in.level = level;
                    in.f = &c;
                    in.factor1 = a.factors->factor1;
                    in.q = q;
                    in.assume_irreducible = opts.assume_irreducible;
                    if (!is_prime_long(level) && q.fits_slong_p())
                        in.partners = partners_for(rep, i, q, algebra.bound(), memo, a.congruences);
                    a.visibility.push_back(visibility_checklist(in));
                }
            } catch (const Error& e) {
                rethrow_with_class(e, c.label);
            }
        }
        rep.analyses.push_back(std::move(a));
    }

    if (opts.cache_dir && !pl.cache_hit)
        cache_store(*opts.cache_dir, CacheEntry::capture(space, hecke, rep.classes));
    return rep;
}

} // namespace windingq
