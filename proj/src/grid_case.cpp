#include "gridsynth/grid_case.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gridsynth/errors.hpp"

namespace gridsynth {

using nlohmann::json;

double TurbineCurve::alpha1() const {
    return (v_rated - v_mid) / std::log(beta / (1.0 - beta));
}

double TurbineCurve::alpha2() const {
    return std::pow(v_furl - v_lim, -alpha3);
}

const Bus& GridCase::bus(int id) const {
    for (const auto& b : buses)
        if (b.id == id) return b;
    throw ValidationError("unknown bus id " + std::to_string(id));
}

const Zone& GridCase::zone(int id) const {
    for (const auto& z : zones)
        if (z.id == id) return z;
    throw ValidationError("unknown zone id " + std::to_string(id));
}

const TurbineCurve& GridCase::turbine_curve(const std::string& id) const {
    auto it = turbine_curves.find(id);
    if (it == turbine_curves.end()) throw ValidationError("unknown turbine curve '" + id + "'");
    return it->second;
}

namespace {

GeoPoint read_location(const json& j) {
    return GeoPoint{j.at("lat").get<double>(), j.at("lon").get<double>()};
}

json write_location(const GeoPoint& p) {
    return json{{"lat", p.latitude_deg}, {"lon", p.longitude_deg}};
}

}  // namespace

GridCase parse_grid_case(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("grid case: ") + e.what());
    }
    GridCase c;
    try {
        if (j.at("format_version").get<int>() != 1) {
            throw ParseError("grid case: unsupported format_version");
        }
        c.base_mva = j.value("base_mva", 100.0);
        for (const auto& jz : j.at("zones")) {
            Zone z;
            z.id = jz.at("id").get<int>();
            c.zones.push_back(z);
        }
        for (const auto& jb : j.at("buses")) {
            Bus b;
            b.id = jb.at("id").get<int>();
            b.location = read_location(jb);
            b.zone_id = jb.at("zone_id").get<int>();
            b.peak_load_mw = jb.at("peak_load_mw").get<double>();
            auto r = jb.at("rci_ratio");
            b.rci_ratio = {r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()};
            c.buses.push_back(b);
        }
        for (const auto& jg : j.at("generators")) {
            Generator g;
            g.id = jg.at("id").get<int>();
            g.bus_id = jg.at("bus_id").get<int>();
            g.location = read_location(jg);
            g.pmin_mw = jg.at("pmin_mw").get<double>();
            g.pmax_mw = jg.at("pmax_mw").get<double>();
            g.v_setpoint_pu = jg.value("v_setpoint_pu", 1.0);
            g.is_slack = jg.value("is_slack", false);
            c.generators.push_back(g);
        }
        for (const auto& jw : j.at("wind_farms")) {
            WindFarm w;
            w.id = jw.at("id").get<int>();
            w.bus_id = jw.at("bus_id").get<int>();
            w.location = read_location(jw);
            w.rated_mw = jw.at("rated_mw").get<double>();
            w.turbine_curve_id = jw.at("turbine_curve_id").get<std::string>();
            c.wind_farms.push_back(w);
        }
        for (const auto& jl : j.at("lines")) {
            Line l;
            l.from_bus = jl.at("from_bus").get<int>();
            l.to_bus = jl.at("to_bus").get<int>();
            l.r_pu = jl.at("r_pu").get<double>();
            l.x_pu = jl.at("x_pu").get<double>();
            l.b_pu = jl.value("b_pu", 0.0);
            c.lines.push_back(l);
        }
        for (const auto& jt : j.at("turbine_curves")) {
            TurbineCurve t;
            t.id = jt.at("id").get<std::string>();
            t.v_cutin = jt.at("v_cutin").get<double>();
            t.v_mid = jt.at("v_mid").get<double>();
            t.v_rated = jt.at("v_rated").get<double>();
            t.v_lim = jt.at("v_lim").get<double>();
            t.v_furl = jt.at("v_furl").get<double>();
            t.beta = jt.value("beta", 0.95);
            t.alpha3 = jt.value("alpha3", 2.0);
            c.turbine_curves[t.id] = t;
        }
        const auto& jc = j.at("correlation_curve");
        c.correlation_curve.max_distance_km = jc.at("max_distance_km").get<double>();
        for (const auto& js : jc.at("segments")) {
            CorrelationCurve::Segment s;
            s.d_lo_km = js.at("d_lo_km").get<double>();
            s.d_hi_km = js.at("d_hi_km").get<double>();
            s.coeffs = js.at("coeffs").get<std::vector<double>>();
            c.correlation_curve.segments.push_back(s);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("grid case: ") + e.what());
    }

    // Cross-link zone membership and centroids.
    for (auto& z : c.zones) {
        double lat = 0.0, lon = 0.0;
        for (const auto& b : c.buses) {
            if (b.zone_id == z.id) {
                z.member_bus_ids.push_back(b.id);
                lat += b.location.latitude_deg;
                lon += b.location.longitude_deg;
            }
        }
        if (!z.member_bus_ids.empty()) {
            z.centroid = {lat / z.member_bus_ids.size(), lon / z.member_bus_ids.size()};
        }
    }

    validate_grid_case(c);
    return c;
}

GridCase load_grid_case(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("grid case: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str().empty()) throw ParseError("grid case: empty file " + path);
    return parse_grid_case(ss.str());
}

void validate_grid_case(const GridCase& c) {
    std::set<int> zone_ids, bus_ids;
    for (const auto& z : c.zones) {
        if (!zone_ids.insert(z.id).second)
            throw ValidationError("duplicate zone id " + std::to_string(z.id));
        if (z.member_bus_ids.empty())
            throw ValidationError("zone " + std::to_string(z.id) + " has no member buses");
    }
    if (zone_ids.empty()) throw ValidationError("case has no zones");
    for (const auto& b : c.buses) {
        if (!bus_ids.insert(b.id).second)
            throw ValidationError("duplicate bus id " + std::to_string(b.id));
        if (!valid_coordinates(b.location))
            throw ValidationError("bus " + std::to_string(b.id) + ": coordinates out of range");
        if (!zone_ids.count(b.zone_id))
            throw ValidationError("bus " + std::to_string(b.id) + ": dangling zone_id " +
                                  std::to_string(b.zone_id));
        if (b.peak_load_mw < 0.0)
            throw ValidationError("bus " + std::to_string(b.id) + ": negative peak load");
        const double sum = b.rci_ratio[0] + b.rci_ratio[1] + b.rci_ratio[2];
        if (std::abs(sum - 1.0) > 1e-9)
            throw ValidationError("bus " + std::to_string(b.id) + ": rci_ratio sums to " +
                                  std::to_string(sum));
        for (double r : b.rci_ratio)
            if (r < 0.0)
                throw ValidationError("bus " + std::to_string(b.id) + ": negative rci component");
    }
    int slack_count = 0;
    for (const auto& g : c.generators) {
        if (!bus_ids.count(g.bus_id))
            throw ValidationError("generator " + std::to_string(g.id) + ": dangling bus_id");
        if (g.pmax_mw < g.pmin_mw)
            throw ValidationError("generator " + std::to_string(g.id) + ": pmax < pmin");
        if (g.is_slack) ++slack_count;
    }
    for (const auto& w : c.wind_farms) {
        if (w.rated_mw <= 0.0)
            throw ValidationError("wind farm " + std::to_string(w.id) + ": rated_mw must be > 0");
        if (!bus_ids.count(w.bus_id))
            throw ValidationError("wind farm " + std::to_string(w.id) + ": dangling bus_id");
        if (!c.turbine_curves.count(w.turbine_curve_id))
            throw ValidationError("wind farm " + std::to_string(w.id) + ": unknown turbine curve '" +
                                  w.turbine_curve_id + "'");
    }
    for (const auto& l : c.lines) {
        if (!bus_ids.count(l.from_bus) || !bus_ids.count(l.to_bus))
            throw ValidationError("line " + std::to_string(l.from_bus) + "-" +
                                  std::to_string(l.to_bus) + ": dangling bus reference");
    }
    for (const auto& [id, t] : c.turbine_curves) {
        if (!(0.0 <= t.v_cutin && t.v_cutin < t.v_mid && t.v_mid < t.v_rated &&
              t.v_rated <= t.v_lim && t.v_lim < t.v_furl))
            throw ValidationError("turbine curve '" + id + "': speed ordering violated");
        if (!(t.beta > 0.5 && t.beta < 1.0))
            throw ValidationError("turbine curve '" + id + "': beta out of (0.5, 1)");
    }
    validate_correlation_curve(c.correlation_curve);
    (void)slack_count;  // a case used only for demand/wind synthesis may omit the slack
}

std::string serialize_grid_case(const GridCase& c) {
    json j;
    j["format_version"] = 1;
    j["base_mva"] = c.base_mva;
    j["zones"] = json::array();
    for (const auto& z : c.zones) j["zones"].push_back({{"id", z.id}});
    j["buses"] = json::array();
    for (const auto& b : c.buses) {
        json jb = write_location(b.location);
        jb["id"] = b.id;
        jb["zone_id"] = b.zone_id;
        jb["peak_load_mw"] = b.peak_load_mw;
        jb["rci_ratio"] = {b.rci_ratio[0], b.rci_ratio[1], b.rci_ratio[2]};
        j["buses"].push_back(jb);
    }
    j["generators"] = json::array();
    for (const auto& g : c.generators) {
        json jg = write_location(g.location);
        jg["id"] = g.id;
        jg["bus_id"] = g.bus_id;
        jg["pmin_mw"] = g.pmin_mw;
        jg["pmax_mw"] = g.pmax_mw;
        jg["v_setpoint_pu"] = g.v_setpoint_pu;
        jg["is_slack"] = g.is_slack;
        j["generators"].push_back(jg);
    }
    j["wind_farms"] = json::array();
    for (const auto& w : c.wind_farms) {
        json jw = write_location(w.location);
        jw["id"] = w.id;
        jw["bus_id"] = w.bus_id;
        jw["rated_mw"] = w.rated_mw;
        jw["turbine_curve_id"] = w.turbine_curve_id;
        j["wind_farms"].push_back(jw);
    }
    j["lines"] = json::array();
    for (const auto& l : c.lines) {
        j["lines"].push_back({{"from_bus", l.from_bus},
                              {"to_bus", l.to_bus},
                              {"r_pu", l.r_pu},
                              {"x_pu", l.x_pu},
                              {"b_pu", l.b_pu}});
    }
    j["turbine_curves"] = json::array();
    for (const auto& [id, t] : c.turbine_curves) {
        j["turbine_curves"].push_back({{"id", t.id},
                                       {"v_cutin", t.v_cutin},
                                       {"v_mid", t.v_mid},
                                       {"v_rated", t.v_rated},
                                       {"v_lim", t.v_lim},
                                       {"v_furl", t.v_furl},
                                       {"beta", t.beta},
                                       {"alpha3", t.alpha3}});
    }
    json jc;
    jc["max_distance_km"] = c.correlation_curve.max_distance_km;
    jc["segments"] = json::array();
    for (const auto& s : c.correlation_curve.segments) {
        jc["segments"].push_back(
            {{"d_lo_km", s.d_lo_km}, {"d_hi_km", s.d_hi_km}, {"coeffs", s.coeffs}});
    }
    j["correlation_curve"] = jc;
    return j.dump(2) + "\n";
}

void save_grid_case(const GridCase& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot write " + path);
    out << serialize_grid_case(c);
}

}  // namespace gridsynth
