// Copyright 2026 The PPS Authors
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

#include "pps/scenario_file.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pps {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &where, const std::string &what) {
    throw ScenarioFormatError("scenario field " + where + ": " + what);
}

const json &field(const json &obj, const std::string &key, const std::string &where) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where + "/" + key, "missing");
    }
    return *it;
}

Complex parse_complex(const json &v, const std::string &where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(where, "expected a complex number as [re, im]");
    }
    Complex z{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(where, "non-finite value");
    }
    return z;
}

CVector parse_vector(const json &v, const std::string &where) {
    if (!v.is_array()) {
        fail(where, "expected an array of [re, im] pairs");
    }
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
        out[static_cast<Eigen::Index>(k)] = parse_complex(v[k], where + "/" + std::to_string(k));
    }
    return out;
}

std::size_t parse_dim(const json &v, const std::string &where) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        fail(where, "expected a positive integer");
    }
    return v.get<std::size_t>();
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json vector_json(const CVector &v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_json(v[k]));
    }
    return out;
}

int nesting(const json &v) {
    if (!v.is_array()) {
        return v.is_object() ? 100 : 0;
    }
    int deepest = 0;
    for (const auto &e : v) {
        deepest = std::max(deepest, nesting(e));
    }
    return deepest + 1;
}

// Like dump(2), but arrays of complex pairs (and the pairs themselves) stay on one line.
void render(const json &v, int indent, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner_pad(static_cast<std::size_t>(indent + 2), ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (auto it = v.begin(); it != v.end(); ++it, ++i) {
            out += inner_pad + json(it.key()).dump() + ": ";
            render(it.value(), indent + 2, out);
            out += i + 1 < v.size() ? ",\n" : "\n";
        }
        out += pad + "}";
    } else if (v.is_array()) {
        if (v.empty() || nesting(v) <= 2) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i > 0) {
                    out += ", ";
                }
                render(v[i], indent, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += inner_pad;
            render(v[i], indent + 2, out);
            out += i + 1 < v.size() ? ",\n" : "\n";
        }
        out += pad + "]";
    } else {
        out += v.dump();
    }
}

}  // namespace

std::optional<SelectionPair> ScenarioFile::reference() const {
    if (!reference_pre || !reference_post) {
        return std::nullopt;
    }
    return make_selection(problem.space, *reference_pre, *reference_post);
}

ScenarioFile parse_scenario(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ScenarioFormatError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail("/", "expected a JSON object at top level");
    }

    const auto &name = field(doc, "name", "");
    if (!name.is_string()) {
        fail("/name", "expected a string");
    }

    const auto &blocks_json = field(doc, "blocks", "");
    if (!blocks_json.is_array() || blocks_json.empty()) {
        fail("/blocks", "expected a nonempty array");
    }
    std::vector<Block> blocks;
    for (std::size_t b = 0; b < blocks_json.size(); ++b) {
        std::string where = "/blocks/" + std::to_string(b);
        const auto &label = field(blocks_json[b], "label", where);
        if (!label.is_string()) {
            fail(where + "/label", "expected a string");
        }
        blocks.push_back({label.get<std::string>(), parse_dim(field(blocks_json[b], "dim", where), where + "/dim")});
    }

    const auto &ops_json = field(doc, "operators", "");
    if (!ops_json.is_array() || ops_json.empty()) {
        fail("/operators", "expected a nonempty array");
    }
    std::vector<Observable> observables;
    for (std::size_t j = 0; j < ops_json.size(); ++j) {
        std::string where = "/operators/" + std::to_string(j);
        const auto &label = field(ops_json[j], "label", where);
        if (!label.is_string()) {
            fail(where + "/label", "expected a string");
        }
        const auto &rows = field(ops_json[j], "matrix", where);
        if (!rows.is_array() || rows.empty()) {
            fail(where + "/matrix", "expected a nonempty array of rows");
        }
        auto n = static_cast<Eigen::Index>(rows.size());
        CMatrix m(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            std::string rw = where + "/matrix/" + std::to_string(k);
            CVector row = parse_vector(rows[static_cast<std::size_t>(k)], rw);
            if (row.size() != n) {
                fail(rw, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
            }
            m.row(k) = row.transpose();
        }
        observables.push_back({label.get<std::string>(), std::move(m)});
    }

    const auto &targets_json = field(doc, "targets", "");
    if (!targets_json.is_array()) {
        fail("/targets", "expected an array of rows");
    }
    TargetPattern target;
    for (std::size_t b = 0; b < targets_json.size(); ++b) {
        CVector row = parse_vector(targets_json[b], "/targets/" + std::to_string(b));
        target.rows.emplace_back(row.data(), row.data() + row.size());
    }

    std::optional<BlockSpace> space;
    try {
        space.emplace(std::move(blocks));
    } catch (const std::exception &e) {
        fail("/blocks", e.what());
    }

    ScenarioFile out{SeparationProblem{name.get<std::string>(), *space, std::move(observables), std::move(target)}, {}, {}};
    auto violations = validate(out.problem);
    if (!violations.empty()) {
        std::string msg;
        for (const auto &v : violations) {
            msg += (msg.empty() ? "" : "; ") + v.message;
        }
        fail("/", msg);
    }

    const std::size_t total = out.problem.space.total_dim();
    for (const char *key : {"reference_pre", "reference_post"}) {
        auto it = doc.find(key);
        if (it == doc.end()) {
            continue;
        }
        std::string where = std::string("/") + key;
        CVector v = parse_vector(*it, where);
        if (static_cast<std::size_t>(v.size()) != total) {
            fail(where, "has " + std::to_string(v.size()) + " entries, expected total dim " + std::to_string(total));
        }
        (std::string(key) == "reference_pre" ? out.reference_pre : out.reference_post) = std::move(v);
    }
    if (out.reference_pre.has_value() != out.reference_post.has_value()) {
        fail("/", "reference_pre and reference_post must be given together");
    }
    if (out.reference_pre && (out.reference_pre->isZero(0.0) || out.reference_post->isZero(0.0))) {
        fail("/", "reference states must not be zero");
    }
    return out;
}

ScenarioFile load_scenario(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioFormatError("cannot open scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string export_scenario(const ScenarioFile &file) {
    const auto &p = file.problem;
    json doc;
    doc["name"] = p.name;
    doc["blocks"] = json::array();
    for (const auto &b : p.space.blocks()) {
        doc["blocks"].push_back(json{{"label", b.label}, {"dim", b.dim}});
    }
    doc["operators"] = json::array();
    for (const auto &o : p.observables) {
        json rows = json::array();
        for (Eigen::Index k = 0; k < o.matrix.rows(); ++k) {
            rows.push_back(vector_json(o.matrix.row(k).transpose()));
        }
        doc["operators"].push_back(json{{"label", o.label}, {"matrix", std::move(rows)}});
    }
    doc["targets"] = json::array();
    for (std::size_t b = 0; b < p.target.blocks(); ++b) {
        doc["targets"].push_back(vector_json(p.target.row(b)));
    }
    if (file.reference_pre && file.reference_post) {
        doc["reference_pre"] = vector_json(*file.reference_pre);
        doc["reference_post"] = vector_json(*file.reference_post);
    }
    std::string out;
    render(doc, 0, out);
    return out + "\n";
}

ScenarioFile to_file(const NamedScenario &scenario) {
    ScenarioFile f{scenario.problem, std::nullopt, std::nullopt};
    if (scenario.reference) {
        f.reference_pre = scenario.reference->pre.flat();
        f.reference_post = scenario.reference->post.flat();
    }
    return f;
}

}  // namespace pps
