#include "morphoseq/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "morphoseq/error.hpp"

namespace morphoseq {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> string_array(const Json& v, const std::string& origin,
                                      const std::string& field) {
    if (!v.is_array())
        fail(Errc::parse_error, origin + ": field `" + field + "` must be an array of strings");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string())
            fail(Errc::parse_error, origin + ": `" + field + "[" + std::to_string(i) +
                                        "]` must be a string");
        out.push_back(v[i].get<std::string>());
    }
    return out;
}

Json parse_document(const std::string& text, const std::string& origin) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse_error, origin + ": " + e.what());
    }
    if (!doc.is_object())
        fail(Errc::parse_error, origin + ": top level must be a JSON object");
    return doc;
}

std::size_t size_field(const Json& v, const std::string& origin, const std::string& field) {
    if (!v.is_number_unsigned())
        fail(Errc::parse_error,
             origin + ": field `" + field + "` must be a non-negative integer");
    return v.get<std::size_t>();
}

} // namespace

MorphicSpec parse_spec_text(const std::string& text, const std::string& origin) {
    Json doc = parse_document(text, origin);
    RawSpec raw;
    bool saw_alphabet = false;
    bool saw_start = false;
    bool saw_rules = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "alphabet") {
            raw.alphabet = string_array(value, origin, "alphabet");
            saw_alphabet = true;
        } else if (key == "start") {
            if (!value.is_string())
                fail(Errc::parse_error, origin + ": field `start` must be a string");
            raw.start = value.get<std::string>();
            saw_start = true;
        } else if (key == "rules") {
            if (!value.is_object())
                fail(Errc::parse_error,
                     origin + ": field `rules` must be an object mapping symbols to arrays");
            for (const auto& [sym, image] : value.items())
                raw.rules.emplace_back(sym, string_array(image, origin, "rules." + sym));
            saw_rules = true;
        } else if (key == "output_alphabet") {
            raw.output_alphabet = string_array(value, origin, "output_alphabet");
        } else if (key == "coding") {
            if (!value.is_object())
                fail(Errc::parse_error,
                     origin + ": field `coding` must be an object mapping symbols to symbols");
            std::vector<std::pair<std::string, std::string>> pairs;
            for (const auto& [sym, img] : value.items()) {
                if (!img.is_string())
                    fail(Errc::parse_error,
                         origin + ": `coding." + sym + "` must be a string");
                pairs.emplace_back(sym, img.get<std::string>());
            }
            raw.coding = std::move(pairs);
        } else {
            fail(Errc::parse_error, origin + ": unknown field `" + key + "`");
        }
    }
    if (!saw_alphabet)
        fail(Errc::parse_error, origin + ": missing field `alphabet`");
    if (!saw_start)
        fail(Errc::parse_error, origin + ": missing field `start`");
    if (!saw_rules)
        fail(Errc::parse_error, origin + ": missing field `rules`");
    return validate_spec(raw);
}

MorphicSpec parse_spec_file(const std::string& path) {
    return parse_spec_text(read_file(path), path);
}

RawSpec to_raw(const MorphicSpec& spec) {
    RawSpec raw;
    raw.alphabet = spec.gamma.names;
    raw.start = spec.gamma.names[spec.start];
    for (std::size_t b = 0; b < spec.rules.size(); ++b) {
        std::vector<std::string> image;
        image.reserve(spec.rules[b].size());
        for (Sym s : spec.rules[b])
            image.push_back(spec.gamma.names[s]);
        raw.rules.emplace_back(spec.gamma.names[b], std::move(image));
    }
    if (!spec.identity_coding) {
        raw.output_alphabet = spec.sigma.names;
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t b = 0; b < spec.coding.size(); ++b)
            pairs.emplace_back(spec.gamma.names[b], spec.sigma.names[spec.coding[b]]);
        raw.coding = std::move(pairs);
    }
    return raw;
}

std::string spec_to_json(const RawSpec& raw) {
    Json doc;
    doc["alphabet"] = raw.alphabet;
    doc["start"] = raw.start;
    Json rules = Json::object();
    for (const auto& [sym, image] : raw.rules)
        rules[sym] = image;
    doc["rules"] = std::move(rules);
    if (raw.output_alphabet)
        doc["output_alphabet"] = *raw.output_alphabet;
    if (raw.coding) {
        Json coding = Json::object();
        for (const auto& [sym, img] : *raw.coding)
            coding[sym] = img;
        doc["coding"] = std::move(coding);
    }
    return doc.dump(2) + "\n";
}

StaircaseParams parse_staircase_text(const std::string& text, const std::string& origin) {
    Json doc = parse_document(text, origin);
    StaircaseParams params{Gaps::constant(1), 10000, 64, 8};
    bool saw_gaps = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "gaps") {
            if (!value.is_string())
                fail(Errc::parse_error,
                     origin + ": field `gaps` must be a descriptor string");
            params.gaps = Gaps::parse(value.get<std::string>());
            saw_gaps = true;
        } else if (key == "limit") {
            params.limit = size_field(value, origin, "limit");
        } else if (key == "witness_len") {
            params.witness_len = size_field(value, origin, "witness_len");
        } else if (key == "max_depth") {
            params.max_depth = size_field(value, origin, "max_depth");
        } else {
            fail(Errc::parse_error, origin + ": unknown field `" + key + "`");
        }
    }
    if (!saw_gaps)
        fail(Errc::parse_error, origin + ": missing field `gaps`");
    return params;
}

StaircaseParams parse_staircase_file(const std::string& path) {
    return parse_staircase_text(read_file(path), path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::io_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        fail(Errc::io_error, "cannot read " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(Errc::io_error, "cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out)
        fail(Errc::io_error, "cannot write " + path);
}

} // namespace morphoseq
