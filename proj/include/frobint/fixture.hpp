#ifndef FROBINT_FIXTURE_HPP
#define FROBINT_FIXTURE_HPP

#include "frobint/rq_field.hpp"

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace frobint {

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FixtureRow {
    std::int64_t p = 0;
    RQInt ap;
    std::optional<RQInt> u, b;
    std::string fac_bp = "-", fac_bOL = "-", marks = "-";
    bool has_data() const { return b.has_value(); }
    bool marked() const { return marks != "-"; }
};

struct Fixture {
    std::int64_t level = 0;
    std::int64_t t = 0, n = 0;  // minpoly x^2 + t x + n
    std::vector<FixtureRow> rows;
    RQField field() const { return RQField(t, n); }
};

// "x^2+x-1", "x^2+3*x+1", "x^2-2"
inline std::pair<std::int64_t, std::int64_t> parse_minpoly(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex re(R"(^x\^2(?:([+-])(\d*)\*?x)?(?:([+-]\d+))?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw FixtureError("cannot parse minpoly '" + text + "'");
    std::int64_t t = 0, n = 0;
    if (m[1].matched) {
        t = m[2].str().empty() ? 1 : std::stoll(m[2].str());
        if (m[1].str() == "-") t = -t;
    }
    if (m[3].matched) n = std::stoll(m[3].str());
    return {t, n};
}

inline Fixture parse_fixture(std::istream& in) {
    Fixture fx;
    bool have_poly = false, have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            static const std::regex kv(R"(^#\s*(\w+):\s*(.*?)\s*$)");
            std::smatch m;
            if (std::regex_match(line, m, kv)) {
                if (m[1] == "level") fx.level = std::stoll(m[2].str());
                if (m[1] == "minpoly") {
                    std::tie(fx.t, fx.n) = parse_minpoly(m[2].str());
                    have_poly = true;
                }
            }
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, '\t')) cols.push_back(c);
        if (!have_header) {
            if (cols.empty() || cols[0] != "p") throw FixtureError("fixture: missing header line");
            have_header = true;
            continue;
        }
        if (cols.size() != 7) throw FixtureError("fixture line " + std::to_string(lineno) + ": expected 7 columns");
        FixtureRow r;
        r.p = std::stoll(cols[0]);
        r.ap = RQField::parse(cols[1]);
        if (cols[2] != "-") r.u = RQField::parse(cols[2]);
        if (cols[3] != "-") r.b = RQField::parse(cols[3]);
        r.fac_bp = cols[4];
        r.fac_bOL = cols[5];
        r.marks = cols[6];
        if (r.u.has_value() != r.b.has_value() || r.b.has_value() != (r.fac_bp != "-"))
            throw FixtureError("fixture line " + std::to_string(lineno) + ": u_p, b_p, fac_bp must be present together");
        fx.rows.push_back(r);
    }
    if (!have_poly) throw FixtureError("fixture: missing '# minpoly:' line");
    return fx;
}

inline Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture " + path);
    return parse_fixture(in);
}

}  // namespace frobint

#endif
