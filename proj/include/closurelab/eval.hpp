#pragma once

#include <map>
#include <string>
#include <vector>

#include "closurelab/element_set.hpp"
#include "closurelab/formula.hpp"
#include "closurelab/structure.hpp"

namespace closurelab {

struct EvalLimits {
    // Quantified evaluation is rejected on universes larger than this.
    int max_quantified_universe = 64;
};

// Tarskian satisfaction; counting quantifiers by exhaustive count over the
// universe. Throws std::runtime_error on an unassigned free variable or
// when a quantified formula meets a universe above the cap.
bool evaluate(const Structure& s, const Formula& f,
              const std::map<std::string, int>& assignment,
              const EvalLimits& limits = {});

// { b in universe : body holds with solution_var := b, param_vars := params }.
ElemSet solutions(const Structure& s, const ParamFormula& pf,
                  const std::vector<int>& params, const EvalLimits& limits = {});

std::size_t count_solutions(const Structure& s, const ParamFormula& pf,
                            const std::vector<int>& params,
                            const EvalLimits& limits = {});

}  // namespace closurelab
