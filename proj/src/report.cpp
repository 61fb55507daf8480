#include "mcycle/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace mcycle {

nlohmann::json line_json(const LineParams& p) {
    return nlohmann::json{{"line", p.line},
                          {"group", to_string(p.group)},
                          {"n", p.n},
                          {"m", p.m},
                          {"r", p.r},
                          {"rho_num", to_string(BigInt(numerator(p.rho)))},
                          {"rho_den", to_string(BigInt(denominator(p.rho)))},
                          {"target", to_string(p.target)}};
}

nlohmann::json config_json(const ExperimentConfig& c) {
    return nlohmann::json{{"line", line_json(c.line)},
                          {"k", c.k},
                          {"M", c.M},
                          {"s", to_string(c.s)},
                          {"delta", to_string(c.delta)},
                          {"eps", to_string(c.eps)},
                          {"c_delta", to_string(c.c_delta, 10)},
                          {"a_delta", to_string(c.a_delta, 10)},
                          {"mode", to_string(c.mode)},
                          {"trials", c.trials},
                          {"seed", c.seed},
                          {"workers", c.workers},
                          {"budget", c.budget},
                          {"stream", to_string(c.stream)},
                          {"engine", to_string(c.engine)},
                          {"trivial_group", c.trivial_group}};
}

std::string config_hash(const ExperimentConfig& c) {
    // Workers never change results, so they stay out of the hash.
    auto j = config_json(c);
    j.erase("workers");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

CsvRow split_line(const std::string& line) {
    CsvRow row;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            row.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes) fail(ErrorCode::Parse, "unterminated quote in CSV line");
    row.push_back(std::move(cur));
    return row;
}

}  // namespace

std::vector<CsvRow> csv_rows(const SummaryStats& st) {
    std::vector<CsvRow> rows;
    const auto& c = st.config;
    const std::string hash = config_hash(c);
    for (const auto& e : st.estimates) {
        rows.push_back({hash, std::to_string(c.line.line), std::to_string(c.line.n), std::to_string(c.k), std::to_string(c.M), to_string(c.s),
                        to_string(c.delta), e.name, std::to_string(e.value.successes), std::to_string(e.value.trials), fmt(e.value.estimate),
                        fmt(e.value.lo), fmt(e.value.hi), e.bound ? (e.bound_is_floor ? ">=" : "<=") + fmt(*e.bound) : "",
                        e.bound ? (e.bound_asserted ? "true" : "false") : ""});
    }
    return rows;
}

void write_csv_header(std::ostream& os) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
    os << '\n';
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows, bool header) {
    if (header) write_csv_header(os);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote(row[i]);
        os << '\n';
    }
    if (!os) fail(ErrorCode::InvalidArgument, "failed writing CSV output");
}

void write_csv(std::ostream& os, const SummaryStats& st, bool header) { write_csv(os, csv_rows(st), header); }

std::vector<CsvRow> read_csv(std::istream& is) {
    std::string line;
    // Leading '#' lines carry the echoed config.
    do {
        if (!std::getline(is, line)) fail(ErrorCode::Parse, "empty CSV input");
    } while (!line.empty() && line[0] == '#');
    if (split_line(line) != kCsvColumns) fail(ErrorCode::Parse, "unexpected CSV header: " + line);
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto row = split_line(line);
        if (row.size() != kCsvColumns.size())
            fail(ErrorCode::Parse, "CSV row has " + std::to_string(row.size()) + " fields, expected " + std::to_string(kCsvColumns.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json stats_json(const SummaryStats& st) {
    nlohmann::json j;
    j["config"] = config_json(st.config);
    j["config_hash"] = config_hash(st.config);
    if (st.config.mode == Mode::FindMCycle) {
        j["runs"] = st.find.runs;
        j["good"] = st.find.good;
        j["bad"] = st.find.bad;
        j["ugly"] = st.find.ugly;
    } else {
        j["trials"] = st.counts.trials;
        j["ngood"] = st.counts.ngood;
        j["ngood_accepted"] = st.counts.ngood_accepted;
        j["images"] = st.counts.images;
        nlohmann::json table = nlohmann::json::object();
        for (auto f : kAllLabels) {
            const auto& row = st.counts.by_label[static_cast<int>(f)];
            table[to_string(f)] = {{"rejected", row[0]}, {"accepted", row[1]}};
        }
        j["contingency"] = table;
    }
    nlohmann::json est = nlohmann::json::array();
    for (const auto& e : st.estimates) {
        nlohmann::json r{{"name", e.name},   {"successes", e.value.successes}, {"trials", e.value.trials},
                         {"estimate", e.value.estimate}, {"ci_lo", e.value.lo},  {"ci_hi", e.value.hi}};
        if (e.bound) {
            r["bound"] = *e.bound;
            r["bound_kind"] = e.bound_is_floor ? "floor" : "ceiling";
            r["bound_asserted"] = e.bound_asserted;
        }
        est.push_back(std::move(r));
    }
    j["estimates"] = est;
    return j;
}

nlohmann::json exact_json(const ExactConditional& e) {
    nlohmann::json j{{"line", line_json(e.line)},
                     {"k", e.k},
                     {"M", e.M},
                     {"group_order", to_string(e.group_order)},
                     {"prob_ngood", to_string(e.prob_ngood)},
                     {"rho_true", to_string(e.rho_true)},
                     {"accept", to_string(e.accept)},
                     {"p", to_string(e.p)},
                     {"p1", to_string(e.p1)},
                     {"p2", to_string(e.p2)},
                     {"q", to_string(e.q)},
                     {"accept_given_ngood", to_string(e.accept_given_ngood)},
                     {"n_given_accept", to_string(e.n_given_accept)}};
    nlohmann::json fam = nlohmann::json::object();
    for (auto f : kAllLabels) {
        fam[to_string(f)] = {{"prob", to_string(e.prob_label[static_cast<int>(f)])}, {"accept_and", to_string(e.q_of(f))}};
    }
    j["families"] = fam;
    return j;
}

}  // namespace mcycle
