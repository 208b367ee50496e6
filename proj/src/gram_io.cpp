#include "qclt/gram_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qclt/errors.hpp"

namespace qclt::gram {

namespace {

using nlohmann::json;

cd parse_entry(const json& v, const char* where) {
    if (v.is_number()) return cd{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cd{v[0].get<double>(), v[1].get<double>()};
    std::ostringstream os;
    os << where << " entries must be numbers or [re, im] pairs";
    throw std::invalid_argument(os.str());
}

GramMatrix parse_states(const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("\"states\" must be a nonempty array");
    std::vector<std::vector<cd>> states;
    states.reserve(arr.size());
    for (const auto& row : arr) {
        if (!row.is_array() || row.empty())
            throw std::invalid_argument("each state must be a nonempty array of amplitudes");
        std::vector<cd> st;
        st.reserve(row.size());
        for (const auto& v : row) st.push_back(parse_entry(v, "state"));
        states.push_back(std::move(st));
    }
    return gram_from_states(states);
}

GramMatrix parse_gram(const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("\"gram\" must be a nonempty square array");
    const std::size_t n = arr.size();
    ComplexMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = arr[i];
        if (!row.is_array() || row.size() != n)
            throw std::invalid_argument("\"gram\" must be a square array of rows");
        for (std::size_t j = 0; j < n; ++j) s(i, j) = parse_entry(row[j], "gram");
    }
    return validate_gram(s);
}

InterpolationModel parse_interpolation(const json& obj) {
    if (!obj.is_object() || !obj.contains("x") || !obj["x"].is_number())
        throw std::invalid_argument("\"interpolation\" needs a numeric field \"x\"");
    InterpolationModel m;
    m.x = obj["x"].get<double>();
    if (!(m.x >= 0.0 && m.x <= 1.0))
        throw std::invalid_argument("interpolation x must lie in [0, 1]");
    if (obj.contains("n")) {
        if (!obj["n"].is_number_integer())
            throw std::invalid_argument("interpolation \"n\" must be an integer");
        m.n = obj["n"].get<long>();
        if (m.n < 2) throw std::invalid_argument("interpolation \"n\" must be >= 2");
        m.limit = false;
    } else {
        m.limit = true;
    }
    return m;
}

}  // namespace

GramInput load_gram_input(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("input JSON malformed: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("input must be a JSON object");

    GramInput out;
    if (doc.contains("states") && doc.contains("gram"))
        throw std::invalid_argument("give either \"states\" or \"gram\", not both");
    if (doc.contains("states")) out.gram = parse_states(doc["states"]);
    if (doc.contains("gram")) out.gram = parse_gram(doc["gram"]);
    if (doc.contains("interpolation")) out.interpolation = parse_interpolation(doc["interpolation"]);
    if (!out.gram && !out.interpolation)
        throw std::invalid_argument(
            "input needs one of \"states\", \"gram\" or \"interpolation\"");
    return out;
}

GramInput read_gram_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on input file: " + path);
    return load_gram_input(buf.str());
}

}  // namespace qclt::gram
