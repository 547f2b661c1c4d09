#pragma once

#include "windingq/congruence.hpp"

#include <map>
#include <memory>

// Per-level pipeline state shared between tests in one binary.
struct LevelData {
    explicit LevelData(long n)
        : space(windingq::ManinSpace::build(n)), hecke(space), classes(windingq::isotypic_decomposition(space, hecke)),
          algebra(windingq::HeckeAlgebra::build(hecke)), winding(windingq::winding_element(space, hecke, algebra))
    {
        windingq::set_rank_zero_flags(classes, winding);
    }

    std::size_t index_of(const std::string& label) const
    {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].label == label)
                return i;
        throw std::out_of_range(label);
    }

    windingq::ManinSpace space;
    windingq::HeckeCache hecke;
    std::vector<windingq::IsotypicClass> classes;
    windingq::HeckeAlgebra algebra;
    windingq::WindingData winding;
};

inline LevelData& level_data(long n)
{
    static std::map<long, std::unique_ptr<LevelData>> cache;
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<LevelData>(n);
    return *slot;
}

inline bool squarefree(long n)
{
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return true;
}
