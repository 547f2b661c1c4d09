#include "windingq/output.hpp"

#include <iomanip>
#include <sstream>

namespace windingq {

std::string rat_string(const Rat& r)
{
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

Json divisors_json(const ElemDivisors& d)
{
    Json a = Json::array();
    for (const auto& x : d.nontrivial())
        a.push_back(x.get_str());
    return a;
}

Json int_list(const std::vector<Int>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

Json congruence_json(const CongruenceReport& c)
{
    Json j;
    j["first"] = c.first;
    j["second"] = c.second;
    j["coprime_to"] = c.coprime_to;
    j["divisors"] = divisors_json(c.divisors);
    j["exponent"] = c.exponent.get_str();
    j["order"] = c.order.get_str();
    j["primes"] = int_list(c.primes);
    return j;
}

Json visibility_json(const VisibilityChecklist& v)
{
    Json j;
    j["q"] = v.q.get_str();
    j["vacuous"] = v.vacuous;
    Json checks = Json::object();
    for (const auto& c : v.checks)
        checks[c.name] = to_string(c.value);
    j["checks"] = checks;
    Json w = Json::array();
    for (const auto& s : v.w_p)
        w.push_back({{"q", s.q}, {"sign", s.sign}});
    j["w_p"] = w;
    j["partner"] = v.partner;
    j["component_prime"] = v.component_prime;
    j["prediction"] = to_string(v.prediction);
    j["rational_prime_only"] = v.rational_prime_only;
    j["caveat"] = v.caveat;
    return j;
}

const ClassAnalysis* analysis_for(const AnalysisReport& rep, std::size_t index)
{
    for (const auto& a : rep.analyses)
        if (a.class_index == index)
            return &a;
    return nullptr;
}

} // namespace

Json to_json(const AnalysisReport& rep)
{
    Json j;
    j["level"] = rep.level;
    j["genus"] = rep.genus;
    j["cusp_order"] = rep.cusp_order.get_str();
    Json classes = Json::array();
    for (std::size_t i = 0; i < rep.classes.size(); ++i) {
        const ClassAnalysis* a = analysis_for(rep, i);
        if (!a)
            continue;
        const IsotypicClass& c = rep.classes[i];
        Json k;
        k["label"] = c.label;
        k["dim"] = c.dim();
        k["rank_zero"] = c.rank_zero;
        if (a->factors) {
            const FactorReport& f = *a->factors;
            k["factor1"] = f.factor1.get_str();
            k["factor1_divisors"] = divisors_json(f.factor1_divisors);
            k["factor2"] = f.factor2.get_str();
            k["denom"] = f.denom.get_str();
            k["ratio_product"] = rat_string(f.ratio_product);
            k["ratio_index"] = rat_string(f.ratio_index);
            k["slack"] = f.slack;
        } else {
            for (const char* key : {"factor1", "factor1_divisors", "factor2", "denom", "ratio_product",
                                    "ratio_index", "slack"})
                k[key] = nullptr;
        }
        Json cong = Json::array();
        for (const auto& c2 : a->congruences)
            cong.push_back(congruence_json(c2));
        k["congruences"] = cong;
        Json vis = Json::array();
        for (const auto& v : a->visibility)
            vis.push_back(visibility_json(v));
        k["visibility"] = vis;
        classes.push_back(k);
    }
    j["classes"] = classes;
    return j;
}

std::string to_csv(const AnalysisReport& rep)
{
    std::ostringstream os;
    os << "level,label,dim,rank_zero,factor1,factor2,denom,ratio_product,ratio_index,congruence_primes,predictions\n";
    for (const auto& a : rep.analyses) {
        const IsotypicClass& c = rep.classes[a.class_index];
        os << rep.level << ',' << c.label << ',' << c.dim() << ',' << (c.rank_zero ? "true" : "false") << ',';
        if (a.factors) {
            const FactorReport& f = *a.factors;
            os << f.factor1 << ',' << f.factor2 << ',' << f.denom << ',' << rat_string(f.ratio_product) << ','
               << rat_string(f.ratio_index) << ',';
        } else {
            os << ",,,,,";
        }
        std::string primes;
        if (!a.congruences.empty())
            for (const auto& p : a.congruences.front().primes)
                primes += (primes.empty() ? "" : " ") + p.get_str();
        os << primes << ',';
        std::string preds;
        for (const auto& v : a.visibility)
            preds += (preds.empty() ? "" : " ") + v.q.get_str() + ":" + to_string(v.prediction);
        os << preds << '\n';
    }
    return os.str();
}

std::string to_table(const AnalysisReport& rep)
{
    std::ostringstream os;
    os << "level " << rep.level << "  genus " << rep.genus << "  cuspidal order " << rep.cusp_order << '\n';
    os << std::left << std::setw(14) << "class" << std::setw(6) << "dim" << std::setw(10) << "rank0"
       << std::setw(14) << "factor1" << std::setw(10) << "factor2" << std::setw(10) << "denom" << std::setw(16)
       << "L/Omega" << "predictions" << '\n';
    for (const auto& a : rep.analyses) {
        const IsotypicClass& c = rep.classes[a.class_index];
        os << std::setw(14) << c.label << std::setw(6) << c.dim() << std::setw(10) << (c.rank_zero ? "yes" : "no");
        if (a.factors) {
            const FactorReport& f = *a.factors;
            os << std::setw(14) << f.factor1.get_str() << std::setw(10) << f.factor2.get_str() << std::setw(10)
               << f.denom.get_str() << std::setw(16) << rat_string(f.ratio_index);
        } else {
            os << std::setw(14) << "-" << std::setw(10) << "-" << std::setw(10) << "-" << std::setw(16) << "-";
        }
        std::string preds;
        for (const auto& v : a.visibility) {
            preds += (preds.empty() ? "" : ", ") + v.q.get_str() + ": " + to_string(v.prediction);
            if (v.component_prime)
                preds += " at p=" + std::to_string(v.component_prime);
        }
        os << (preds.empty() ? "-" : preds) << '\n';
    }
    bool any = false;
    for (const auto& a : rep.analyses)
        any = any || !a.visibility.empty();
    if (any)
        os << kBsdCaveat << '\n';
    return os.str();
}

} // namespace windingq
