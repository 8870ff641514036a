#include "stsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stsp/errors.hpp"

namespace stsp {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::full: return "full";
        case Variant::no_time_windows: return "no_time_windows";
        case Variant::delivery_only: return "delivery_only";
    }
    throw std::invalid_argument("unknown variant value");
}

Variant variant_from_string(const std::string& s) {
    if (s == "full") return Variant::full;
    if (s == "no_time_windows") return Variant::no_time_windows;
    if (s == "delivery_only") return Variant::delivery_only;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

bool Instance::is_required(NodeId v) const {
    return std::binary_search(required.begin(), required.end(), v);
}

double Instance::sum_required_demand() const {
    double total = 0.0;
    for (NodeId v : required) total += d.at(v);
    return total;
}

namespace {

constexpr double kOpenWindowEnd = 100000.0;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("instance: " + msg);
}

}  // namespace

void Instance::validate() const {
    require(!required.empty(), "required set is empty");
    require(std::is_sorted(required.begin(), required.end()), "required set is not ascending");
    require(std::adjacent_find(required.begin(), required.end()) == required.end(),
            "required set has duplicates");
    require(required.front() != 0, "depot cannot be required");
    for (NodeId v : required) require(graph.has_node(v), "required node missing from graph");

    for (NodeId v : graph.nodes()) {
        require(coords.count(v) == 1, "node " + std::to_string(v) + " has no coordinates");
        require(a.count(v) && b.count(v) && s.count(v) && d.count(v),
                "node " + std::to_string(v) + " has incomplete parameters");
        const double av = a.at(v), bv = b.at(v), sv = s.at(v), dv = d.at(v);
        require(std::isfinite(av) && std::isfinite(bv) && std::isfinite(sv) && std::isfinite(dv),
                "non-finite parameter at node " + std::to_string(v));
        if (is_required(v)) {
            require(av >= 0.0, "negative window start at node " + std::to_string(v));
            require(bv > av, "window must satisfy b > a at node " + std::to_string(v));
            require(sv > 0.0, "required node " + std::to_string(v) + " needs a service time");
            require(dv != 0.0, "required node " + std::to_string(v) + " needs a nonzero demand");
        } else {
            require(av == 0.0 && bv == kOpenWindowEnd && sv == 0.0 && dv == 0.0,
                    "non-required node " + std::to_string(v) +
                        " must keep defaults a=0, b=100000, s=0, d=0");
        }
    }

    double abs_demand = 0.0;
    for (NodeId v : required) abs_demand += std::fabs(d.at(v));
    require(Q > 0.0 && std::isfinite(Q), "Q must be positive");
    require(abs_demand <= Q, "total absolute demand exceeds Q");
    require(M > 0.0 && std::isfinite(M), "M must be positive");

    if (variant == Variant::delivery_only)
        for (NodeId v : required)
            require(d.at(v) < 0.0, "delivery_only requires negative demands");
}

std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// Hand-rolled writer: the format pins both the key order and the number
// rendering (17 significant digits), which generic serializers do not.
class JsonWriter {
public:
    void raw(const std::string& s) { out_ << s; }
    void num(double v) { out_ << format_sig17(v); }
    void num(std::uint64_t v) { out_ << v; }
    void num(int v) { out_ << v; }
    void str(const std::string& s) { out_ << '"' << s << '"'; }  // keys/enums: no escapes needed
    std::string take() { return out_.str(); }

private:
    std::ostringstream out_;
};

void write_param_map(JsonWriter& w, const Graph& g, const std::map<NodeId, double>& m) {
    w.raw("{");
    bool first = true;
    for (NodeId v : g.nodes()) {
        if (!first) w.raw(", ");
        first = false;
        w.str(std::to_string(v));
        w.raw(": ");
        w.num(m.at(v));
    }
    w.raw("}");
}

}  // namespace

std::string instance_to_json(const Instance& ins) {
    JsonWriter w;
    w.raw("{\n  \"meta\": {\"seed\": ");
    w.num(ins.seed);
    w.raw(", \"n\": ");
    w.num(ins.n);
    w.raw(", \"radius\": ");
    w.num(ins.radius);
    w.raw(", \"fraction\": ");
    w.num(ins.fraction);
    w.raw(", \"variant\": ");
    w.str(to_string(ins.variant));
    w.raw("},\n  \"nodes\": [");
    bool first = true;
    for (NodeId v : ins.graph.nodes()) {
        if (!first) w.raw(", ");
        first = false;
        const Point& p = ins.coords.at(v);
        w.raw("{\"id\": ");
        w.num(v);
        w.raw(", \"x\": ");
        w.num(p.x);
        w.raw(", \"y\": ");
        w.num(p.y);
        w.raw("}");
    }
    w.raw("],\n  \"required\": [");
    first = true;
    for (NodeId v : ins.required) {
        if (!first) w.raw(", ");
        first = false;
        w.num(v);
    }
    w.raw("],\n  \"arcs\": [");
    first = true;
    for (const Arc& k : ins.graph.arcs()) {
        if (!first) w.raw(", ");
        first = false;
        w.raw("{\"id\": ");
        w.num(k.id);
        w.raw(", \"from\": ");
        w.num(k.from);
        w.raw(", \"to\": ");
        w.num(k.to);
        w.raw(", \"length\": ");
        w.num(k.length);
        w.raw("}");
    }
    w.raw("],\n  \"params\": {\n    \"a\": ");
    write_param_map(w, ins.graph, ins.a);
    w.raw(",\n    \"b\": ");
    write_param_map(w, ins.graph, ins.b);
    w.raw(",\n    \"s\": ");
    write_param_map(w, ins.graph, ins.s);
    w.raw(",\n    \"d\": ");
    write_param_map(w, ins.graph, ins.d);
    w.raw(",\n    \"Q\": ");
    w.num(ins.Q);
    w.raw(",\n    \"M\": ");
    w.num(ins.M);
    w.raw("\n  }\n}\n");
    return w.take();
}

void write_instance(const Instance& ins, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << instance_to_json(ins);
    if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

using nlohmann::json;

double as_number(const json& j, const char* what) {
    if (!j.is_number()) throw std::invalid_argument(std::string("instance json: ") + what +
                                                    " must be a number");
    return j.get<double>();
}

std::map<NodeId, double> parse_param_map(const json& j, const char* what) {
    if (!j.is_object()) throw std::invalid_argument(std::string("instance json: params.") + what +
                                                    " must be an object");
    std::map<NodeId, double> m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        NodeId v;
        try {
            std::size_t used = 0;
            v = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("instance json: params.") + what +
                                        " has a non-integer node key '" + it.key() + "'");
        }
        m[v] = as_number(it.value(), what);
    }
    return m;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("instance json: parse error: ") + e.what());
    }
    try {
        const json& meta = j.at("meta");
        std::vector<NodeId> nodes;
        std::map<NodeId, Point> coords;
        for (const json& nj : j.at("nodes")) {
            NodeId v = nj.at("id").get<NodeId>();
            nodes.push_back(v);
            coords[v] = Point{as_number(nj.at("x"), "x"), as_number(nj.at("y"), "y")};
        }
        std::vector<Arc> arcs;
        for (const json& aj : j.at("arcs"))
            arcs.push_back(Arc{aj.at("id").get<ArcId>(), aj.at("from").get<NodeId>(),
                               aj.at("to").get<NodeId>(), as_number(aj.at("length"), "length")});

        Instance ins{Graph(std::move(nodes), std::move(arcs))};
        ins.seed = meta.at("seed").get<std::uint64_t>();
        ins.n = meta.at("n").get<int>();
        ins.radius = as_number(meta.at("radius"), "radius");
        ins.fraction = as_number(meta.at("fraction"), "fraction");
        ins.variant = variant_from_string(meta.at("variant").get<std::string>());
        ins.coords = std::move(coords);
        for (const json& rj : j.at("required")) ins.required.push_back(rj.get<NodeId>());
        const json& params = j.at("params");
        ins.a = parse_param_map(params.at("a"), "a");
        ins.b = parse_param_map(params.at("b"), "b");
        ins.s = parse_param_map(params.at("s"), "s");
        ins.d = parse_param_map(params.at("d"), "d");
        ins.Q = as_number(params.at("Q"), "Q");
        ins.M = as_number(params.at("M"), "M");
        ins.validate();
        return ins;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance json: bad schema: ") + e.what());
    }
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

}  // namespace stsp
