#include <istream>
#include <ostream>

#include "json.hpp"

#include "xpm/errors.hpp"
#include "xpm/quantum.hpp"

namespace xpm {

using ojson = nlohmann::ordered_json;

void write_state_json(std::ostream& os, const SectorState& psi)
{
    ojson j;
    j["n_z"] = psi.grid().size();
    j["length"] = psi.grid().length();
    j["t"] = psi.t;
    j["occupation"] = {{"probe", psi.occupation().probe}, {"signal", psi.occupation().signal}};
    j["layout"] = "(j_p * n_s + j_s) * n_b + sigma";
    ojson amps = ojson::array();
    for (const auto& a : psi.amp) amps.push_back({a.real(), a.imag()});
    j["amplitudes"] = std::move(amps);
    os << j.dump() << '\n';
}

SectorState read_state_json(std::istream& is)
{
    ojson j;
    try {
        j = ojson::parse(is);
        const Grid grid(j.at("n_z").get<std::size_t>(), j.at("length").get<double>());
        const Occupation occ{j.at("occupation").at("probe").get<bool>(),
                             j.at("occupation").at("signal").get<bool>()};
        SectorState s(grid, occ);
        s.t = j.at("t").get<double>();
        const auto& amps = j.at("amplitudes");
        if (amps.size() != s.amp.size()) throw Error("state json: amplitude count does not match");
        for (std::size_t i = 0; i < s.amp.size(); ++i)
            s.amp[i] = {amps[i].at(0).get<double>(), amps[i].at(1).get<double>()};
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("state json: ") + e.what());
    }
}

}  // namespace xpm
