#include "relspace/indicator.hpp"

#include <algorithm>
#include <sstream>

#include "relspace/error.hpp"

namespace relspace {

std::string_view to_string(IndicatorId id)
{
    switch (id) {
    case IndicatorId::D: return "D";
    case IndicatorId::Dtilde: return "Dtilde";
    case IndicatorId::E: return "E";
    case IndicatorId::E1: return "E1";
    case IndicatorId::E2: return "E2";
    case IndicatorId::Dstar: return "Dstar";
    case IndicatorId::DtildeStar: return "DtildeStar";
    case IndicatorId::Estar: return "Estar";
    case IndicatorId::E1star: return "E1star";
    case IndicatorId::E2star: return "E2star";
    case IndicatorId::Dtot: return "Dtot";
    case IndicatorId::DtildeTot: return "DtildeTot";
    case IndicatorId::Etot: return "Etot";
    case IndicatorId::E1tot: return "E1tot";
    case IndicatorId::E2tot: return "E2tot";
    }
    return "?";
}

std::optional<IndicatorId> parse_indicator(std::string_view name)
{
    for (IndicatorId id : kAllIndicators)
        if (to_string(id) == name)
            return id;
    return std::nullopt;
}

SpaceFamily space_family(IndicatorId id)
{
    switch (id) {
    case IndicatorId::D:
    case IndicatorId::Dtilde:
    case IndicatorId::E:
    case IndicatorId::E1:
    case IndicatorId::E2: return SpaceFamily::Product;
    case IndicatorId::Dstar:
    case IndicatorId::DtildeStar:
    case IndicatorId::Estar:
    case IndicatorId::E1star:
    case IndicatorId::E2star: return SpaceFamily::Country;
    default: return SpaceFamily::Combined;
    }
}

std::string_view to_string(SpaceFamily family)
{
    switch (family) {
    case SpaceFamily::Product: return "product";
    case SpaceFamily::Country: return "country";
    case SpaceFamily::Combined: return "combined";
    }
    return "?";
}

std::string_view to_string(ProbKind kind)
{
    switch (kind) {
    case ProbKind::C: return "C";
    case ProbKind::B: return "B";
    case ProbKind::K: return "K";
    case ProbKind::Cmin: return "Cmin";
    case ProbKind::Bmin: return "Bmin";
    }
    return "?";
}

std::vector<IndicatorId> parse_indicator_list(std::string_view text)
{
    if (text == "all")
        return {kAllIndicators.begin(), kAllIndicators.end()};
    if (text == "headline")
        return {kHeadlineIndicators.begin(), kHeadlineIndicators.end()};
    std::vector<IndicatorId> ids;
    std::stringstream stream{std::string(text)};
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty())
            continue;
        auto id = parse_indicator(item);
        if (!id)
            throw Error(ErrorCode::BadFlag, "unknown indicator id '" + item + "'");
        if (std::find(ids.begin(), ids.end(), *id) == ids.end())
            ids.push_back(*id);
    }
    if (ids.empty())
        throw Error(ErrorCode::BadFlag, "empty indicator list");
    return ids;
}

}  // namespace relspace
