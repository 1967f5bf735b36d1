#include "hbmlr/store_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hbmlr/format.hpp"

namespace hbmlr {

namespace {

std::string join_vector(const Vector& v) {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_g17(v[i]);
    }
    return out;
}

Vector parse_vector(const std::string& text) {
    if (text.empty()) return Vector();
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        values.push_back(parse_double(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

}  // namespace

void save_store(const SampleStore& store, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");

    auto header = [&out](const std::string& key, const std::string& value) {
        out << "# " << key << " = " << value << '\n';
    };
    const McmcSettings& s = store.settings;
    const PriorSpec& pr = store.prior;
    header("format", "hbmlr-store-1");
    header("n", std::to_string(store.n_cases));
    header("p", std::to_string(store.n_features));
    header("class_count", std::to_string(store.class_count));
    header("prior", family_name(pr.family));
    header("alpha", format_g17(pr.alpha));
    header("log_w", format_g17(pr.log_w));
    header("w_mode", pr.w_mode == WMode::Hyper ? "hyper" : "fixed");
    header("hyper_w_variance", format_g17(pr.hyper_w_variance));
    header("sigma0_sq", format_g17(pr.sigma0_sq));
    header("n1", std::to_string(s.n1));
    header("l1", std::to_string(s.l1));
    header("n2", std::to_string(s.n2));
    header("l2", std::to_string(s.l2));
    header("eps", format_g17(s.eps));
    header("zeta", format_g17(s.zeta));
    header("thin", std::to_string(s.thin));
    header("seed", std::to_string(s.seed));
    header("dataset_fingerprint", std::to_string(store.dataset_fingerprint));
    header("train_means", join_vector(store.train_means));
    header("train_sds", join_vector(store.train_sds));
    header("initial_attempts", std::to_string(store.initial_stats.attempts));
    header("initial_accepts", std::to_string(store.initial_stats.accepts));
    header("initial_divergences", std::to_string(store.initial_stats.divergences));
    header("initial_active_total", std::to_string(store.initial_stats.active_rows_total));
    header("sampling_attempts", std::to_string(store.sampling_stats.attempts));
    header("sampling_accepts", std::to_string(store.sampling_stats.accepts));
    header("sampling_divergences", std::to_string(store.sampling_stats.divergences));
    header("sampling_active_total", std::to_string(store.sampling_stats.active_rows_total));
    header("max_cache_drift", format_g17(store.max_cache_drift));
    header("draws", std::to_string(store.draws.size()));

    for (const Draw& d : store.draws) {
        out << d.iteration << ' ' << (d.accepted ? 1 : 0) << ' ' << format_g17(d.delta_h) << ' '
            << (std::isnan(d.log_w) ? std::string("NA") : format_g17(d.log_w));
        for (Index j = 0; j < d.sigma_sq.size(); ++j) out << ' ' << format_g17(d.sigma_sq[j]);
        for (Index r = 0; r < d.delta.rows(); ++r)
            for (Index c = 0; c < d.delta.cols(); ++c) out << ' ' << format_g17(d.delta(r, c));
        out << '\n';
    }
    if (!out) throw Error("write failed for '" + path + "'");
}

SampleStore load_store(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");

    std::map<std::string, std::string> meta;
    std::string line;
    Index line_no = 0;
    SampleStore store;
    std::vector<std::string> data_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t eq = line.find(" = ");
            if (eq == std::string::npos)
                throw ParseError("malformed header line", line_no, 0);
            std::string key = line.substr(2, eq - 2);
            meta[key] = line.substr(eq + 3);
        } else {
            data_lines.push_back(line);
        }
    }

    auto need = [&meta, &path](const std::string& key) -> const std::string& {
        auto it = meta.find(key);
        if (it == meta.end()) throw Error("'" + path + "' is missing header key '" + key + "'");
        return it->second;
    };

    if (need("format") != "hbmlr-store-1") throw Error("'" + path + "' has unknown store format");
    store.n_cases = static_cast<Index>(std::stoll(need("n")));
    store.n_features = static_cast<Index>(std::stoll(need("p")));
    store.class_count = std::stoi(need("class_count"));
    store.prior.family = family_from_name(need("prior"));
    store.prior.alpha = parse_double(need("alpha"));
    store.prior.log_w = parse_double(need("log_w"));
    store.prior.w_mode = need("w_mode") == "hyper" ? WMode::Hyper : WMode::Fixed;
    store.prior.hyper_w_variance = parse_double(need("hyper_w_variance"));
    store.prior.sigma0_sq = parse_double(need("sigma0_sq"));
    store.settings.n1 = std::stoi(need("n1"));
    store.settings.l1 = std::stoi(need("l1"));
    store.settings.n2 = std::stoi(need("n2"));
    store.settings.l2 = std::stoi(need("l2"));
    store.settings.eps = parse_double(need("eps"));
    store.settings.zeta = parse_double(need("zeta"));
    store.settings.thin = std::stoi(need("thin"));
    store.settings.seed = std::stoull(need("seed"));
    store.dataset_fingerprint = std::stoull(need("dataset_fingerprint"));
    store.train_means = parse_vector(need("train_means"));
    store.train_sds = parse_vector(need("train_sds"));
    store.initial_stats.attempts = std::stoull(need("initial_attempts"));
    store.initial_stats.accepts = std::stoull(need("initial_accepts"));
    store.initial_stats.divergences = std::stoull(need("initial_divergences"));
    store.initial_stats.active_rows_total = std::stoull(need("initial_active_total"));
    store.sampling_stats.attempts = std::stoull(need("sampling_attempts"));
    store.sampling_stats.accepts = std::stoull(need("sampling_accepts"));
    store.sampling_stats.divergences = std::stoull(need("sampling_divergences"));
    store.sampling_stats.active_rows_total = std::stoull(need("sampling_active_total"));
    store.max_cache_drift = parse_double(need("max_cache_drift"));

    const std::size_t expected_draws = std::stoull(need("draws"));
    if (data_lines.size() != expected_draws)
        throw Error("'" + path + "' declares " + std::to_string(expected_draws) +
                    " draws but contains " + std::to_string(data_lines.size()));

    const Index p = store.n_features;
    const Index k = contrast_count(store.class_count);
    const std::size_t expected_fields = 4 + static_cast<std::size_t>(p) +
                                        static_cast<std::size_t>((p + 1) * k);
    store.draws.reserve(expected_draws);
    for (std::size_t r = 0; r < data_lines.size(); ++r) {
        std::istringstream row(data_lines[r]);
        std::vector<std::string> fields;
        std::string field;
        while (row >> field) fields.push_back(field);
        if (fields.size() != expected_fields)
            throw ParseError("draw row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(expected_fields),
                             static_cast<Index>(r + 1), 0);
        Draw d;
        d.iteration = std::stoull(fields[0]);
        d.accepted = fields[1] == "1";
        d.delta_h = parse_double(fields[2]);
        d.log_w = fields[3] == "NA" ? std::numeric_limits<double>::quiet_NaN()
                                    : parse_double(fields[3]);
        d.sigma_sq.resize(p);
        std::size_t f = 4;
        for (Index j = 0; j < p; ++j) d.sigma_sq[j] = parse_double(fields[f++]);
        d.delta.resize(p + 1, k);
        for (Index rr = 0; rr <= p; ++rr)
            for (Index cc = 0; cc < k; ++cc) d.delta(rr, cc) = parse_double(fields[f++]);
        store.draws.push_back(std::move(d));
    }
    return store;
}

}  // namespace hbmlr
