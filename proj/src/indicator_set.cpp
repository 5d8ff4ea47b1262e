#include "relspace/indicator_set.hpp"

#include <algorithm>

#include "relspace/combined_space.hpp"
#include "relspace/country_space.hpp"
#include "relspace/product_space.hpp"

namespace relspace {

std::map<IndicatorId, IndicatorMatrix> compute_indicators(const BinaryRcaMatrix& x,
                                                          const std::vector<IndicatorId>& ids)
{
    auto wants = [&](IndicatorId id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
    auto wants_family = [&](SpaceFamily family) {
        return std::any_of(ids.begin(), ids.end(),
                           [&](IndicatorId id) { return space_family(id) == family; });
    };
    const bool combined = wants_family(SpaceFamily::Combined);
    const bool product = combined || wants_family(SpaceFamily::Product);
    const bool country = combined || wants_family(SpaceFamily::Country);

    std::map<IndicatorId, IndicatorMatrix> out;
    auto keep = [&](IndicatorMatrix&& m) {
        if (wants(m.id))
            out.insert_or_assign(m.id, std::move(m));
    };

    const AntiRcaMatrix z = compute_anti_rca(x);

    ConditionalProbMatrix c, b, k, cmin, bmin;
    if (product) {
        c = product_space::cond_prob_C(x);
        b = product_space::cond_prob_B(x, z);
        cmin = product_space::symmetrized(c);
        bmin = product_space::symmetrized(b);
        if (wants(IndicatorId::D))
            keep(product_space::density_D(x, cmin));
        if (wants(IndicatorId::Dtilde))
            keep(product_space::density_Dtilde(x, z, cmin, bmin));
        if (wants(IndicatorId::E) || wants(IndicatorId::E1) || wants(IndicatorId::E2)) {
            auto e = product_space::indicator_E(x, z, c, b);
            keep(std::move(e.e));
            keep(std::move(e.e1));
            keep(std::move(e.e2));
        }
    }

    ConditionalProbMatrix cstar, bstar, kstar;
    if (country) {
        cstar = country_space::cond_prob_Cstar(x);
        bstar = country_space::cond_prob_Bstar(x, z);
        if (wants_family(SpaceFamily::Country)) {
            auto star = country_space::indicators_star(x, z, cstar, bstar);
            keep(std::move(star.d_star));
            keep(std::move(star.d_tilde_star));
            keep(std::move(star.e_star));
            keep(std::move(star.e1_star));
            keep(std::move(star.e2_star));
        }
    }

    if (combined) {
        const ConditionalProbMatrix cstar_min = product_space::symmetrized(cstar);
        const ConditionalProbMatrix bstar_min = product_space::symmetrized(bstar);
        if (wants(IndicatorId::Dtot))
            keep(combined_space::indicator_Dtot(x, z, cmin, cstar_min));
        if (wants(IndicatorId::DtildeTot))
            keep(combined_space::indicator_DtildeTot(x, z, cmin, bmin, cstar_min, bstar_min));
        if (wants(IndicatorId::Etot) || wants(IndicatorId::E1tot) || wants(IndicatorId::E2tot)) {
            cmin = {};
            bmin = {};
            k = product_space::marginal_K(c, b);
            kstar = country_space::marginal_Kstar(cstar, bstar);
            auto tot = combined_space::indicator_Etot(x, z, c, b, k, cstar, bstar, kstar, x.r());
            keep(std::move(tot.e_tot));
            keep(std::move(tot.e1_tot));
            keep(std::move(tot.e2_tot));
        }
    }
    return out;
}

}  // namespace relspace
