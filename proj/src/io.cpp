#include "pcoreset/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pcoreset {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_number(std::string_view token) {
    const std::string s(token);
    if (s.empty()) {
        throw ValidationError("empty numeric field");
    }
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    // Underflow to a subnormal or zero is fine; overflow is not.
    if (end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v))) {
        throw ValidationError("not a number: '" + s + "'");
    }
    return v;
}

std::uint64_t parse_u64(std::string_view token) {
    const std::string s(token);
    if (s.empty() || s.front() == '-') {
        throw ValidationError("not an unsigned integer: '" + s + "'");
    }
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        throw ValidationError("not an unsigned integer: '" + s + "'");
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read " + path);
    }
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("cannot write " + path);
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto pos = text.find('\n', start);
        if (pos == std::string_view::npos) {
            pos = text.size();
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool parses_as_numbers(const std::vector<std::string_view>& cells) {
    for (auto c : cells) {
        try {
            parse_number(c);
        } catch (const ValidationError&) {
            return false;
        }
    }
    return true;
}

// Parsed numeric CSV rows.
struct CsvTable {
    std::vector<std::vector<double>> rows;
};

CsvTable parse_numeric_csv(std::string_view text, bool allow_header) {
    CsvTable table;
    std::size_t width = 0;
    bool first = true;
    const auto lines = lines_of(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto line = trim(lines[ln]);
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (first && allow_header && !parses_as_numbers(cells)) {
            first = false;
            continue;
        }
        first = false;
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto c : cells) {
            double v = 0.0;
            try {
                v = parse_number(c);
            } catch (const ValidationError&) {
                throw ValidationError("row " + std::to_string(ln + 1) + ": not a number: '" +
                                      std::string(c) + "'");
            }
            if (!std::isfinite(v)) {
                throw ValidationError("row " + std::to_string(ln + 1) + ": non-finite value");
            }
            row.push_back(v);
        }
        if (table.rows.empty()) {
            width = row.size();
        } else if (row.size() != width) {
            throw ValidationError("row " + std::to_string(ln + 1) + ": expected " +
                                  std::to_string(width) + " columns, found " +
                                  std::to_string(row.size()));
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) {
        throw ValidationError("no data rows");
    }
    return table;
}

}  // namespace

Dataset parse_points_csv(std::string_view text) {
    return Dataset::euclidean(parse_numeric_csv(text, true).rows);
}

Dataset load_points_csv(const std::string& path) { return parse_points_csv(read_file(path)); }

std::string points_to_csv(const Dataset& data) {
    if (!data.is_euclidean()) {
        throw ValidationError("only Euclidean datasets can be written as point CSV");
    }
    std::string out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.point(i);
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (t > 0) {
                out += ',';
            }
            out += format_double(row[t]);
        }
        out += '\n';
    }
    return out;
}

void save_points_csv(const Dataset& data, const std::string& path) {
    write_file(path, points_to_csv(data));
}

Dataset parse_distance_matrix(std::string_view text) {
    auto table = parse_numeric_csv(text, false);
    const std::size_t n = table.rows.size();
    if (table.rows.front().size() != n) {
        throw ValidationError("distance matrix must be square");
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& r : table.rows) {
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Dataset::from_matrix(std::move(flat), n);
}

Dataset load_distance_matrix(const std::string& path) {
    return parse_distance_matrix(read_file(path));
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

void Document::set(std::string key, std::vector<std::string> values) {
    for (auto& [k, v] : fields) {
        if (k == key) {
            v = std::move(values);
            return;
        }
    }
    fields.emplace_back(std::move(key), std::move(values));
}

void Document::set(std::string key, const std::vector<double>& values) {
    std::vector<std::string> text;
    text.reserve(values.size());
    for (double v : values) {
        text.push_back(format_double(v));
    }
    set(std::move(key), std::move(text));
}

bool Document::has(std::string_view key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) {
            return true;
        }
    }
    return false;
}

const std::vector<std::string>& Document::values(std::string_view key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) {
            return v;
        }
    }
    throw ValidationError("document is missing field '" + std::string(key) + "'");
}

std::string Document::text(std::string_view key) const {
    const auto& v = values(key);
    if (v.size() != 1) {
        throw ValidationError("field '" + std::string(key) + "' must have exactly one value");
    }
    return v.front();
}

double Document::number(std::string_view key) const { return parse_number(text(key)); }

std::vector<double> Document::numbers(std::string_view key) const {
    std::vector<double> out;
    for (const auto& t : values(key)) {
        out.push_back(parse_number(t));
    }
    return out;
}

std::size_t Document::count(std::string_view key) const {
    return static_cast<std::size_t>(parse_u64(text(key)));
}

std::uint64_t Document::u64(std::string_view key) const { return parse_u64(text(key)); }

std::string write_document(const Document& doc) {
    std::string out = "pcoreset-document " + std::to_string(kDocumentVersion) + "\n";
    out += "kind " + doc.kind + "\n";
    for (const auto& [key, values] : doc.fields) {
        out += key;
        for (const auto& v : values) {
            out += ' ';
            out += v;
        }
        out += '\n';
    }
    out += "entries " + std::to_string(doc.rows.size()) + "\n";
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

Document parse_document(std::string_view text) {
    const auto lines = lines_of(text);
    std::size_t ln = 0;
    auto next_tokens = [&]() -> std::vector<std::string> {
        while (ln < lines.size()) {
            const auto line = trim(lines[ln++]);
            if (line.empty() || line.front() == '#') {
                continue;
            }
            std::vector<std::string> tokens;
            std::istringstream in{std::string(line)};
            std::string tok;
            while (in >> tok) {
                tokens.push_back(tok);
            }
            return tokens;
        }
        return {};
    };

    auto header = next_tokens();
    if (header.size() != 2 || header[0] != "pcoreset-document") {
        throw ValidationError("not a pcoreset document");
    }
    if (header[1] != std::to_string(kDocumentVersion)) {
        throw ValidationError("unsupported document version " + header[1]);
    }
    auto kind = next_tokens();
    if (kind.size() != 2 || kind[0] != "kind") {
        throw ValidationError("document must declare its kind on the second line");
    }
    Document doc;
    doc.kind = kind[1];
    while (true) {
        auto tokens = next_tokens();
        if (tokens.empty()) {
            throw ValidationError("document has no entries section");
        }
        if (tokens[0] == "entries") {
            if (tokens.size() != 2) {
                throw ValidationError("malformed entries line");
            }
            const auto count = parse_u64(tokens[1]);
            for (std::uint64_t r = 0; r < count; ++r) {
                auto row = next_tokens();
                if (row.empty()) {
                    throw ValidationError("document ends before all entries were read");
                }
                doc.rows.push_back(std::move(row));
            }
            if (!next_tokens().empty()) {
                throw ValidationError("trailing content after the entries section");
            }
            return doc;
        }
        std::string key = tokens.front();
        tokens.erase(tokens.begin());
        if (doc.has(key)) {
            throw ValidationError("duplicate field '" + key + "'");
        }
        doc.fields.emplace_back(std::move(key), std::move(tokens));
    }
}

// Coresets ------------------------------------------------------------------

namespace {

std::string space_name(SpaceMode s) { return s == SpaceMode::euclidean ? "euclidean" : "metric"; }

SpaceMode space_from_name(const std::string& s) {
    if (s == "euclidean") return SpaceMode::euclidean;
    if (s == "metric") return SpaceMode::metric;
    throw ValidationError("unknown space '" + s + "'");
}

void expect_kind(const Document& doc, const std::string& kind) {
    if (doc.kind != kind) {
        throw ValidationError("expected a '" + kind + "' document, found '" + doc.kind + "'");
    }
}

}  // namespace

Document coreset_to_document(const WeightedCoreset& c) {
    const auto& prov = c.provenance;
    Document doc;
    doc.kind = "coreset";
    doc.set("mode", to_string(prov.mode));
    doc.set("space", space_name(prov.space));
    doc.set("n", std::to_string(prov.n));
    doc.set("d", std::to_string(prov.dim));
    doc.set("k", std::to_string(prov.k));
    if (prov.mode == BuildMode::fixed_p) {
        doc.set("p", prov.p);
    } else if (prov.mode == BuildMode::oneshot) {
        doc.set("p_max", prov.p_max);
        doc.set("grid_spacing", prov.grid_spacing);
        doc.set("grid", prov.grid);
        doc.set("grid_mean_s", prov.grid_mean_s);
    }
    doc.set("delta", prov.delta);
    doc.set("seed", std::to_string(prov.seed));
    doc.set("mean_s", prov.mean_s);
    doc.set("m", std::to_string(c.m()));
    doc.set("columns", prov.space == SpaceMode::euclidean
                           ? std::vector<std::string>{"index", "weight", "prob", "coords..."}
                           : std::vector<std::string>{"index", "weight", "prob"});
    for (const auto& e : c.entries) {
        std::vector<std::string> row{std::to_string(e.index), format_double(e.weight),
                                     format_double(e.prob)};
        for (double v : e.coords) {
            row.push_back(format_double(v));
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

WeightedCoreset coreset_from_document(const Document& doc) {
    expect_kind(doc, "coreset");
    WeightedCoreset c;
    auto& prov = c.provenance;
    prov.mode = build_mode_from_string(doc.text("mode"));
    prov.space = space_from_name(doc.text("space"));
    prov.n = doc.count("n");
    prov.dim = doc.count("d");
    prov.k = doc.count("k");
    if (prov.mode == BuildMode::fixed_p) {
        prov.p = doc.number("p");
    } else if (prov.mode == BuildMode::oneshot) {
        prov.p_max = doc.number("p_max");
        prov.grid_spacing = doc.number("grid_spacing");
        prov.grid = doc.numbers("grid");
        prov.grid_mean_s = doc.numbers("grid_mean_s");
        if (prov.grid.size() != prov.grid_mean_s.size() || prov.grid.empty()) {
            throw ValidationError("grid and grid_mean_s must be non-empty and equally long");
        }
    }
    prov.delta = doc.number("delta");
    prov.seed = doc.u64("seed");
    prov.mean_s = doc.number("mean_s");
    const std::size_t m = doc.count("m");
    if (m == 0) {
        throw ValidationError("a coreset needs at least one entry");
    }
    if (doc.rows.size() != m) {
        throw ValidationError("entry count does not match m");
    }
    if (prov.n == 0) {
        throw ValidationError("coreset provenance has n = 0");
    }
    const std::size_t coord_cols = prov.space == SpaceMode::euclidean ? prov.dim : 0;
    for (const auto& row : doc.rows) {
        if (row.size() != 3 + coord_cols) {
            throw ValidationError("coreset entry has the wrong number of columns");
        }
        CoresetEntry e;
        e.index = static_cast<std::size_t>(parse_u64(row[0]));
        if (e.index >= prov.n) {
            throw ValidationError("coreset entry index out of range");
        }
        e.weight = parse_number(row[1]);
        e.prob = parse_number(row[2]);
        for (std::size_t t = 0; t < coord_cols; ++t) {
            e.coords.push_back(parse_number(row[3 + t]));
        }
        c.entries.push_back(std::move(e));
    }
    check_weight_identity(c);
    return c;
}

std::string write_coreset(const WeightedCoreset& c) { return write_document(coreset_to_document(c)); }

WeightedCoreset read_coreset(std::string_view text) {
    return coreset_from_document(parse_document(text));
}

void save_coreset(const WeightedCoreset& c, const std::string& path) {
    write_file(path, write_coreset(c));
}

WeightedCoreset load_coreset(const std::string& path) { return read_coreset(read_file(path)); }

// Reports ---------------------------------------------------------------------

Document report_to_document(const ErrorReport& r) {
    Document doc;
    doc.kind = "report";
    doc.set("p", r.p);
    doc.set("strategy", to_string(r.strategy));
    doc.set("query_seed", std::to_string(r.query_seed));
    doc.set("queries", std::to_string(r.per_query.size()));
    doc.set("max_error", r.max_error);
    doc.set("mean_error", r.mean_error);
    doc.set("zero_cost_count", std::to_string(r.zero_cost_count));
    doc.set("columns", std::vector<std::string>{"query", "full_cost", "coreset_cost", "rel_error",
                                                "zero_cost"});
    for (const auto& q : r.per_query) {
        doc.rows.push_back({std::to_string(q.query_id), format_double(q.full_cost),
                            format_double(q.coreset_cost), format_double(q.rel_error),
                            q.zero_cost ? "1" : "0"});
    }
    return doc;
}

ErrorReport report_from_document(const Document& doc) {
    expect_kind(doc, "report");
    ErrorReport r;
    r.p = doc.number("p");
    r.strategy = query_strategy_from_string(doc.text("strategy"));
    r.query_seed = doc.u64("query_seed");
    r.max_error = doc.number("max_error");
    r.mean_error = doc.number("mean_error");
    r.zero_cost_count = doc.count("zero_cost_count");
    if (doc.count("queries") != doc.rows.size()) {
        throw ValidationError("report query count does not match its entries");
    }
    double max_seen = 0.0;
    std::size_t zeros = 0;
    for (const auto& row : doc.rows) {
        if (row.size() != 5 || (row[4] != "0" && row[4] != "1")) {
            throw ValidationError("malformed report entry");
        }
        QueryError q;
        q.query_id = static_cast<std::size_t>(parse_u64(row[0]));
        q.full_cost = parse_number(row[1]);
        q.coreset_cost = parse_number(row[2]);
        q.rel_error = parse_number(row[3]);
        q.zero_cost = row[4] == "1";
        if (q.zero_cost) {
            ++zeros;
        } else {
            max_seen = std::max(max_seen, q.rel_error);
        }
        r.per_query.push_back(q);
    }
    if (max_seen != r.max_error || zeros != r.zero_cost_count) {
        throw ValidationError("report summary disagrees with its entries");
    }
    return r;
}

std::string write_report(const ErrorReport& r) { return write_document(report_to_document(r)); }

ErrorReport read_report(std::string_view text) { return report_from_document(parse_document(text)); }

// Synth specs -------------------------------------------------------------------

Document synth_spec_to_document(const SynthSpec& spec) {
    Document doc;
    doc.kind = "synth";
    doc.set("n", std::to_string(spec.n));
    doc.set("d", std::to_string(spec.dim));
    doc.set("seed", std::to_string(spec.seed));
    doc.set("noise_fraction", spec.noise_fraction);
    if (spec.noise_fraction > 0.0) {
        doc.set("noise_lo", spec.noise_lo);
        doc.set("noise_hi", spec.noise_hi);
    }
    if (spec.tail) {
        doc.set("tail", std::vector<double>{spec.tail->fraction, spec.tail->shape,
                                            spec.tail->scale});
    }
    doc.set("columns", std::vector<std::string>{"weight", "stddev", "mean..."});
    for (const auto& c : spec.components) {
        std::vector<std::string> row{format_double(c.weight), format_double(c.stddev)};
        for (double v : c.mean) {
            row.push_back(format_double(v));
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

SynthSpec synth_spec_from_document(const Document& doc) {
    expect_kind(doc, "synth");
    SynthSpec spec;
    spec.n = doc.count("n");
    spec.dim = doc.count("d");
    spec.seed = doc.u64("seed");
    spec.noise_fraction = doc.has("noise_fraction") ? doc.number("noise_fraction") : 0.0;
    if (doc.has("noise_lo")) {
        spec.noise_lo = doc.numbers("noise_lo");
    }
    if (doc.has("noise_hi")) {
        spec.noise_hi = doc.numbers("noise_hi");
    }
    if (doc.has("tail")) {
        const auto t = doc.numbers("tail");
        if (t.size() != 3) {
            throw ValidationError("tail needs fraction, shape and scale");
        }
        spec.tail = ParetoTail{t[0], t[1], t[2]};
    }
    for (const auto& row : doc.rows) {
        if (row.size() != 2 + spec.dim) {
            throw ValidationError("component row must hold weight, stddev and d mean values");
        }
        GaussianComponent c;
        c.weight = parse_number(row[0]);
        c.stddev = parse_number(row[1]);
        for (std::size_t t = 0; t < spec.dim; ++t) {
            c.mean.push_back(parse_number(row[2 + t]));
        }
        spec.components.push_back(std::move(c));
    }
    validate(spec);
    return spec;
}

std::string write_synth_spec(const SynthSpec& spec) {
    return write_document(synth_spec_to_document(spec));
}

SynthSpec read_synth_spec(std::string_view text) {
    return synth_spec_from_document(parse_document(text));
}

}  // namespace pcoreset
