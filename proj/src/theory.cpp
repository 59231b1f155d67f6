#include "gptk/theory.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gptk {

using json = nlohmann::json;

int Theory::measurement_index(const std::string& name) const {
    for (std::size_t i = 0; i < measurements.size(); ++i)
        if (measurements[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown measurement: " + name);
}

int Theory::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < pure_states.size(); ++i)
        if (pure_states[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown pure state: " + name);
}

const PureState& Theory::state(const std::string& name) const {
    return pure_states[static_cast<std::size_t>(state_index(name))];
}

Vec Theory::point(const PureState& s) const {
    Vec out;
    for (const auto& d : s.dists) out.insert(out.end(), d.begin(), d.end());
    return out;
}

Vec Theory::generalized_point(const PureState& s) const {
    Vec out;
    for (const auto& d : s.dists)
        for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k]);
    return out;
}

std::vector<std::string> validate_theory(const Theory& t) {
    std::vector<std::string> problems;
    std::set<std::string> mnames;
    for (const auto& m : t.measurements) {
        if (m.outcomes < 2)
            problems.push_back("measurement " + m.name + " has fewer than 2 outcomes");
        if (!mnames.insert(m.name).second)
            problems.push_back("duplicate measurement name " + m.name);
    }
    std::set<std::string> snames;
    for (const auto& s : t.pure_states) {
        if (!snames.insert(s.name).second)
            problems.push_back("duplicate state name " + s.name);
        if (s.dists.size() != t.measurements.size()) {
            problems.push_back("state " + s.name + " has " + std::to_string(s.dists.size()) +
                               " distributions, expected " +
                               std::to_string(t.measurements.size()));
            continue;
        }
        for (std::size_t j = 0; j < s.dists.size(); ++j) {
            const auto& d = s.dists[j];
            if (static_cast<int>(d.size()) != t.measurements[j].outcomes) {
                problems.push_back("state " + s.name + ", measurement " +
                                   t.measurements[j].name + ": distribution length mismatch");
                continue;
            }
            Rational total = 0;
            for (const auto& p : d) {
                if (p < 0)
                    problems.push_back("state " + s.name + ", measurement " +
                                       t.measurements[j].name + ": negative probability " +
                                       to_string(p));
                total += p;
            }
            if (total != 1)
                problems.push_back("state " + s.name + ", measurement " +
                                   t.measurements[j].name + ": distribution sums to " +
                                   to_string(total));
        }
    }
    for (const auto& [key, sname] : t.eigenstates) {
        const auto& [mname, outcome] = key;
        if (!mnames.count(mname)) {
            problems.push_back("eigenstate entry references unknown measurement " + mname);
            continue;
        }
        if (!snames.count(sname)) {
            problems.push_back("eigenstate entry references unknown state " + sname);
            continue;
        }
        const auto& s = t.state(sname);
        int mi = t.measurement_index(mname);
        if (outcome < 0 || outcome >= t.measurements[static_cast<std::size_t>(mi)].outcomes) {
            problems.push_back("eigenstate entry for " + mname + " has out-of-range outcome");
            continue;
        }
        if (s.dists.size() == t.measurements.size() &&
            s.dists[static_cast<std::size_t>(mi)].size() >
                static_cast<std::size_t>(outcome) &&
            s.dists[static_cast<std::size_t>(mi)][static_cast<std::size_t>(outcome)] != 1)
            problems.push_back("state " + sname + " is not an eigenstate of " + mname +
                               " with outcome " + std::to_string(outcome));
    }
    return problems;
}

int tomographic_dimension(const Theory& t) {
    int d = 0;
    for (const auto& m : t.measurements) d += m.outcomes - 1;
    return d;
}

bool is_regular(const Theory& t) {
    for (const auto& m : t.measurements)
        for (int o = 0; o < m.outcomes; ++o)
            if (!t.eigenstates.count({m.name, o})) return false;
    return true;
}

std::vector<Vec> mix(const Theory& t, const Mixture& m) {
    Rational total = 0;
    for (const auto& [name, w] : m.weights) {
        if (w < 0) throw std::invalid_argument("negative mixture weight for " + name);
        total += w;
    }
    if (total != 1)
        throw std::invalid_argument("mixture weights sum to " + to_string(total));
    std::vector<Vec> out(t.measurements.size());
    for (std::size_t j = 0; j < t.measurements.size(); ++j)
        out[j].assign(static_cast<std::size_t>(t.measurements[j].outcomes), Rational(0));
    for (const auto& [name, w] : m.weights) {
        const auto& s = t.state(name);
        for (std::size_t j = 0; j < out.size(); ++j)
            for (std::size_t k = 0; k < out[j].size(); ++k) out[j][k] += w * s.dists[j][k];
    }
    return out;
}

Vec mix_point(const Theory& t, const Mixture& m) {
    Vec out;
    for (const auto& d : mix(t, m)) out.insert(out.end(), d.begin(), d.end());
    return out;
}

bool same_point(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    return a == b;
}

namespace {

Mixture parse_mixture_object(const json& obj) {
    Mixture m;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        m.weights[it.key()] = parse_rational(it.value().get<std::string>());
    return m;
}

json mixture_to_json(const Mixture& m) {
    json obj = json::object();
    for (const auto& [name, w] : m.weights) obj[name] = to_string(w);
    return obj;
}

}  // namespace

Theory parse_theory(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("theory file is not valid JSON: ") + e.what());
    }
    Theory t;
    if (!doc.contains("measurements") || !doc.contains("pure_states"))
        throw std::invalid_argument("theory file needs 'measurements' and 'pure_states'");
    for (const auto& m : doc["measurements"])
        t.measurements.push_back({m.at("name").get<std::string>(), m.at("outcomes").get<int>()});
    for (const auto& s : doc["pure_states"]) {
        PureState ps;
        ps.name = s.at("name").get<std::string>();
        for (const auto& d : s.at("dists")) {
            Vec v;
            for (const auto& x : d) v.push_back(parse_rational(x.get<std::string>()));
            ps.dists.push_back(std::move(v));
        }
        t.pure_states.push_back(std::move(ps));
    }
    if (doc.contains("eigenstates"))
        for (const auto& e : doc["eigenstates"])
            t.eigenstates[{e.at("measurement").get<std::string>(), e.at("outcome").get<int>()}] =
                e.at("state").get<std::string>();
    if (doc.contains("disturbance"))
        for (const auto& e : doc["disturbance"]) {
            DisturbanceEntry de;
            de.measurement = e.at("measurement").get<std::string>();
            de.state = e.at("state").get<std::string>();
            if (e.contains("outcome")) de.outcome = e["outcome"].get<int>();
            de.image = parse_mixture_object(e.at("image"));
            t.disturbance.push_back(std::move(de));
        }
    if (doc.contains("ontology")) {
        const auto& o = doc["ontology"];
        OntologySpec spec;
        spec.kind = o.at("kind").get<std::string>();
        if (o.contains("intermediate_vertices"))
            for (const auto& v : o["intermediate_vertices"]) {
                NamedVec nv;
                nv.name = v.at("name").get<std::string>();
                for (const auto& x : v.at("coords"))
                    nv.coords.push_back(parse_rational(x.get<std::string>()));
                spec.intermediate_vertices.push_back(std::move(nv));
            }
        if (o.contains("decompositions"))
            for (auto it = o["decompositions"].begin(); it != o["decompositions"].end(); ++it) {
                std::map<std::string, Rational> weights;
                for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                    weights[jt.key()] = parse_rational(jt.value().get<std::string>());
                spec.decompositions[it.key()] = std::move(weights);
            }
        t.ontology = std::move(spec);
    }
    // Referential integrity beyond what validate_theory reports.
    std::set<std::string> snames;
    for (const auto& s : t.pure_states) snames.insert(s.name);
    for (const auto& [key, sname] : t.eigenstates)
        if (!snames.count(sname))
            throw std::invalid_argument("eigenstate entry references unknown state " + sname);
    return t;
}

std::string serialize_theory(const Theory& t) {
    json doc;
    doc["measurements"] = json::array();
    for (const auto& m : t.measurements)
        doc["measurements"].push_back({{"name", m.name}, {"outcomes", m.outcomes}});
    doc["pure_states"] = json::array();
    for (const auto& s : t.pure_states) {
        json dists = json::array();
        for (const auto& d : s.dists) {
            json row = json::array();
            for (const auto& x : d) row.push_back(to_string(x));
            dists.push_back(row);
        }
        doc["pure_states"].push_back({{"name", s.name}, {"dists", dists}});
    }
    if (!t.eigenstates.empty()) {
        doc["eigenstates"] = json::array();
        for (const auto& [key, sname] : t.eigenstates)
            doc["eigenstates"].push_back(
                {{"measurement", key.first}, {"outcome", key.second}, {"state", sname}});
    }
    if (!t.disturbance.empty()) {
        doc["disturbance"] = json::array();
        for (const auto& e : t.disturbance) {
            json entry = {{"measurement", e.measurement},
                          {"state", e.state},
                          {"image", mixture_to_json(e.image)}};
            if (e.outcome) entry["outcome"] = *e.outcome;
            doc["disturbance"].push_back(entry);
        }
    }
    if (t.ontology) {
        json o;
        o["kind"] = t.ontology->kind;
        if (!t.ontology->intermediate_vertices.empty()) {
            o["intermediate_vertices"] = json::array();
            for (const auto& v : t.ontology->intermediate_vertices) {
                json coords = json::array();
                for (const auto& x : v.coords) coords.push_back(to_string(x));
                o["intermediate_vertices"].push_back({{"name", v.name}, {"coords", coords}});
            }
        }
        if (!t.ontology->decompositions.empty()) {
            json decs = json::object();
            for (const auto& [sname, weights] : t.ontology->decompositions) {
                json w = json::object();
                for (const auto& [vname, r] : weights) w[vname] = to_string(r);
                decs[sname] = w;
            }
            o["decompositions"] = decs;
        }
        doc["ontology"] = o;
    }
    return doc.dump(2) + "\n";
}

Theory load_theory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read theory file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_theory(buf.str());
}

}  // namespace gptk
