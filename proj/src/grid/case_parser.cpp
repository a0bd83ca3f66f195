#include "tsa/grid/case_parser.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tsa/common.hpp"

namespace tsa::grid {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw ParseError("case file line " + std::to_string(line_no) + ": " + what);
}

double parse_real(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail(line_no, "malformed number '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        fail(line_no, "malformed number '" + tok + "'");
    }
}

int parse_int(const std::string& tok, int line_no) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        fail(line_no, "malformed integer '" + tok + "'");
    }
    return v;
}

BusKind parse_kind(const std::string& tok, int line_no) {
    if (tok == "SLACK") return BusKind::Slack;
    if (tok == "PV") return BusKind::PV;
    if (tok == "PQ") return BusKind::PQ;
    fail(line_no, "unknown bus kind '" + tok + "'");
}

}  // namespace

GridCase parse_case(std::string_view text) {
    GridCase gcase;
    enum class Section { None, System, Bus, Branch, Gen } section = Section::None;
    bool saw_mva_base = false;

    int line_no = 0;
    std::istringstream stream{std::string(text)};
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto tokens = tokenize(raw);
        if (tokens.empty()) continue;

        if (tokens[0].front() == '[') {
            if (tokens.size() != 1) fail(line_no, "unexpected text after section header");
            if (tokens[0] == "[SYSTEM]") section = Section::System;
            else if (tokens[0] == "[BUS]") section = Section::Bus;
            else if (tokens[0] == "[BRANCH]") section = Section::Branch;
            else if (tokens[0] == "[GEN]") section = Section::Gen;
            else fail(line_no, "unknown section " + tokens[0]);
            continue;
        }

        switch (section) {
            case Section::None:
                fail(line_no, "data before any section header");
            case Section::System: {
                const auto eq = tokens[0].find('=');
                if (tokens.size() != 1 || eq == std::string::npos) fail(line_no, "expected key=value");
                const std::string key = tokens[0].substr(0, eq);
                const std::string value = tokens[0].substr(eq + 1);
                if (key == "mva_base") {
                    gcase.system_mva_base = parse_real(value, line_no);
                    saw_mva_base = true;
                } else {
                    fail(line_no, "unknown [SYSTEM] key '" + key + "'");
                }
                break;
            }
            case Section::Bus: {
                if (tokens.size() != 7) fail(line_no, "expected 7 bus columns, got " + std::to_string(tokens.size()));
                Bus bus;
                bus.id = parse_int(tokens[0], line_no);
                bus.kind = parse_kind(tokens[1], line_no);
                bus.p_load = parse_real(tokens[2], line_no);
                bus.q_load = parse_real(tokens[3], line_no);
                bus.g_shunt = parse_real(tokens[4], line_no);
                bus.b_shunt = parse_real(tokens[5], line_no);
                bus.v_setpoint = parse_real(tokens[6], line_no);
                gcase.buses.push_back(bus);
                break;
            }
            case Section::Branch: {
                if (tokens.size() != 6) fail(line_no, "expected 6 branch columns, got " + std::to_string(tokens.size()));
                Branch br;
                br.index = static_cast<int>(gcase.branches.size());
                br.from_bus = parse_int(tokens[0], line_no);
                br.to_bus = parse_int(tokens[1], line_no);
                br.r = parse_real(tokens[2], line_no);
                br.x = parse_real(tokens[3], line_no);
                br.b_charging = parse_real(tokens[4], line_no);
                const int status = parse_int(tokens[5], line_no);
                if (status != 0 && status != 1) fail(line_no, "branch status must be 0 or 1");
                br.status = status == 1 ? BranchStatus::InService : BranchStatus::Out;
                gcase.branches.push_back(br);
                break;
            }
            case Section::Gen: {
                if (tokens.size() != 7) fail(line_no, "expected 7 generator columns, got " + std::to_string(tokens.size()));
                Generator gen;
                gen.bus = parse_int(tokens[0], line_no);
                gen.p_gen = parse_real(tokens[1], line_no);
                gen.v_setpoint = parse_real(tokens[2], line_no);
                gen.inertia_h = parse_real(tokens[3], line_no);
                gen.damping_d = parse_real(tokens[4], line_no);
                gen.xd_prime = parse_real(tokens[5], line_no);
                gen.mva_base = parse_real(tokens[6], line_no);
                gcase.generators.push_back(gen);
                break;
            }
        }
    }

    if (!saw_mva_base) throw ParseError("case file has no [SYSTEM] mva_base");
    gcase.validate();
    return gcase;
}

GridCase load_case_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open case file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_case(buffer.str());
}

}  // namespace tsa::grid
