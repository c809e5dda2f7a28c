// Copyright 2026 The qnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnet/json_io.hpp"

#include "qnet/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qnet {

namespace {

void write_value(std::string &out, const nlohmann::ordered_json &j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case nlohmann::ordered_json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            break;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        break;
    }
    case nlohmann::ordered_json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            break;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad;
            out += nlohmann::ordered_json(it.key()).dump();
            out += ": ";
            write_value(out, it.value(), depth + 1);
        }
        out += "\n" + close_pad + "}";
        break;
    }
    case nlohmann::ordered_json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            break;
        }
        bool scalars = true;
        for (const auto &e : j) {
            scalars = scalars && !e.is_structured();
        }
        if (scalars) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += i ? ", " : "";
                write_value(out, j[i], depth + 1);
            }
            out += "]";
            break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += i ? ",\n" : "";
            out += pad;
            write_value(out, j[i], depth + 1);
        }
        out += "\n" + close_pad + "]";
        break;
    }
    default:
        out += j.dump();
    }
}

std::vector<std::string> party_columns(std::size_t parties) {
    if (parties == 3) {
        return {"a", "b", "c"};
    }
    std::vector<std::string> cols{"a"};
    for (std::size_t i = 1; i + 1 < parties; ++i) {
        cols.push_back("b" + std::to_string(i));
    }
    if (parties > 1) {
        cols.push_back("c");
    }
    return cols;
}

}  // namespace

nlohmann::ordered_json table_to_json(const CorrelationTable &t) {
    nlohmann::ordered_json j;
    j["outcome_alphabets"] = t.outcome_alphabets();
    j["input_alphabets"] = t.input_alphabets();
    j["probabilities"] = t.probabilities();
    return j;
}

CorrelationTable table_from_json(const nlohmann::json &j) {
    try {
        auto outs = j.at("outcome_alphabets").get<std::vector<int>>();
        std::vector<int> ins;
        if (j.contains("input_alphabets")) {
            ins = j.at("input_alphabets").get<std::vector<int>>();
        }
        return CorrelationTable(std::move(outs), std::move(ins), j.at("probabilities").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("table file: ") + e.what());
    }
}

nlohmann::json load_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigurationError("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigurationError(path.string() + ": " + e.what());
    }
}

CorrelationTable load_table(const std::filesystem::path &path) {
    return table_from_json(load_json(path));
}

std::string dump_json(const nlohmann::ordered_json &j) {
    std::string out;
    write_value(out, j, 0);
    out += "\n";
    return out;
}

std::string table_to_csv(const CorrelationTable &t) {
    std::ostringstream os;
    const std::size_t n = t.parties();
    const bool inputs = t.has_inputs();
    const auto cols = party_columns(n);
    if (inputs) {
        os << "x,y,";
    }
    for (const auto &c : cols) {
        os << c << ',';
    }
    os << "p\n";
    for (std::size_t s = 0; s < t.input_tuples(); ++s) {
        const auto in = t.input_tuple(s);
        const auto sl = t.slice(s);
        for (std::size_t o = 0; o < t.outcome_tuples(); ++o) {
            if (inputs) {
                os << in.front() + 1 << ',' << in.back() + 1 << ',';
            }
            for (int v : t.outcome_tuple(o)) {
                os << v + 1 << ',';
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", sl[o]);
            os << buf << '\n';
        }
    }
    return os.str();
}

}  // namespace qnet
