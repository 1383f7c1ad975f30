#include <umbral/cli.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <umbral/errors.hpp>
#include <umbral/families.hpp>
#include <umbral/io.hpp>
#include <umbral/montecarlo.hpp>
#include <umbral/processes.hpp>
#include <umbral/tsh.hpp>

namespace umbral::cli
{

namespace
{

// Output schema version, bumped on incompatible changes.
constexpr int schema_version = 1;

struct Options {
    std::size_t d = 1;
    int order = 4;
    std::string format = "json";
    std::string output;

    std::string process;
    std::string spec_file;
    std::vector<std::string> params;
    std::string matrix;
    std::string coupling;

    std::string v;
    int max_order = -1;
    std::string family;
    std::string time = "t";
    std::string sigma;
    std::string mu_file;
    std::vector<std::string> nu_files;

    std::string input;
    std::string poly;
    bool at_time = false;
    bool inverse = false;

    std::size_t paths = 100000;
    std::uint64_t seed = 20240601;
    std::string times = "1/2,1";
    unsigned threads = 0;
};

class verification_failure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

void emit(const Options &o, const std::string &text, std::ostream &out)
{
    if (o.output.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') {
            out << '\n';
        }
        return;
    }
    std::ofstream file(o.output);
    if (!file) {
        throw parse_error("cannot write " + o.output);
    }
    file << text << '\n';
}

std::string dump(nlohmann::json j)
{
    if (j.is_object()) {
        j["schema_version"] = schema_version;
    }
    return j.dump(2);
}

Polynomial parse_time(const std::string &text)
{
    return Polynomial::parse(text);
}

ProcessSpec process_spec(const Options &o)
{
    if (!o.spec_file.empty()) {
        return ProcessSpec::from_json(read_json_file(o.spec_file));
    }
    if (o.process.empty()) {
        throw parse_error("a process is required (--process NAME or --spec FILE)");
    }
    json j = {{"d", o.d}, {"order", o.order}};
    json params = json::object();
    if (o.process.starts_with("custom:")) {
        j["kind"] = "custom";
        params["file"] = o.process.substr(7);
    } else {
        j["kind"] = o.process;
    }
    for (const auto &p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) {
            throw parse_error("--param expects key=value, got '" + p + "'");
        }
        params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    if (!o.matrix.empty()) {
        params["C"] = json::parse(o.matrix);
    }
    if (!o.coupling.empty()) {
        params["coupling"] = o.coupling;
    }
    j["params"] = params;
    return ProcessSpec::from_json(j);
}

// Accepts "(1,2)" as well as the bare forms "2" and "1,2".
MultiIndex index_from_text(const std::string &text)
{
    if (text.find('(') == std::string::npos) {
        return MultiIndex::parse("(" + text + ")");
    }
    return MultiIndex::parse(text);
}

MultiIndex parse_index(const Options &o)
{
    const MultiIndex v = index_from_text(o.v);
    if (v.size() != o.d) {
        throw dimension_error("index " + v.to_string() + " does not have dimension " + std::to_string(o.d));
    }
    return v;
}

// The requested index, or every index up to --max-order.
std::vector<MultiIndex> indices(const Options &o, bool include_zero)
{
    if (!o.v.empty()) {
        return {parse_index(o)};
    }
    const int n = o.max_order >= 0 ? o.max_order : o.order;
    std::vector<MultiIndex> out;
    for (const auto &v : graded_indices(o.d, n)) {
        if (include_zero || !v.is_zero()) {
            out.push_back(v);
        }
    }
    return out;
}

std::string latex_table(const std::string &name, const std::vector<std::pair<MultiIndex, SpaceTimePolynomial>> &rows)
{
    std::ostringstream out;
    out << "\\begin{tabular}{ll}\n$v$ & $" << name << "_v(x,t)$ \\\\\n\\hline\n";
    for (const auto &[v, p] : rows) {
        out << "$" << v.to_string() << "$ & $" << coefficients_to_latex(p.coefficients(), p.dimension())
            << "$ \\\\\n";
    }
    out << "\\end{tabular}\n";
    return out.str();
}

std::string text_rows(const std::vector<std::pair<MultiIndex, SpaceTimePolynomial>> &rows)
{
    std::ostringstream out;
    for (const auto &[v, p] : rows) {
        out << v.to_string() << ": " << p.to_polynomial().to_string() << '\n';
    }
    return out.str();
}

json rows_to_json(const std::vector<std::pair<MultiIndex, SpaceTimePolynomial>> &rows, bool all_below)
{
    json list = json::array();
    for (const auto &[v, p] : rows) {
        std::map<MultiIndex, Polynomial> coeffs = p.coefficients();
        if (all_below) {
            for (const auto &k : lower_set(v)) {
                coeffs.try_emplace(k);
            }
        }
        list.push_back({{"v", v.to_string()}, {"coeffs", coefficients_to_json(coeffs)}});
    }
    return list;
}

std::string render_rows(const Options &o, const std::string &name,
                        const std::vector<std::pair<MultiIndex, SpaceTimePolynomial>> &rows, json header)
{
    if (o.format == "latex") {
        return latex_table(name, rows);
    }
    if (o.format == "text") {
        return text_rows(rows);
    }
    const json list = rows_to_json(rows, name == "Q");
    if (rows.size() == 1 && !o.v.empty()) {
        header.update(list[0]);
    } else {
        header["polynomials"] = list;
    }
    return dump(header);
}

std::string describe(const HarmonicityReport &r)
{
    if (r.holds) {
        return "holds";
    }
    return "fails at basis index " + (r.first_difference ? r.first_difference->to_string() : std::string("?"))
           + ": conditional side " + r.lhs.to_string() + ", expected " + r.rhs.to_string();
}

int cmd_partitions(const Options &o, std::ostream &out)
{
    const MultiIndex v = index_from_text(o.v);
    json list = json::array();
    std::ostringstream text;
    std::size_t count = 0;
    for (const auto &p : partitions(v)) {
        ++count;
        json blocks = json::array();
        for (const auto &b : p.blocks()) {
            blocks.push_back({{"column", b.column.to_string()}, {"multiplicity", b.multiplicity}});
        }
        const Rational w = partition_weight(p, v);
        list.push_back({{"blocks", blocks}, {"length", p.length()}, {"weight", w.to_string()}});
        text << p.to_string() << "  weight " << w << '\n';
    }
    if (o.format == "text") {
        emit(o, text.str() + std::to_string(count) + " partitions\n", out);
    } else {
        emit(o, dump({{"v", v.to_string()}, {"count", count}, {"partitions", list}}), out);
    }
    return ok;
}

UmbraTuple input_tuple(const Options &o)
{
    if (!o.input.empty()) {
        return moments_from_json(read_json_file(o.input));
    }
    const SymbolicProcess p = build(process_spec(o));
    return o.at_time ? p.at_time() : p.one_step();
}

std::string render_tuple(const Options &o, const UmbraTuple &mu)
{
    if (o.format == "text") {
        std::ostringstream text;
        const auto &sp = mu.series().space();
        for (std::size_t r = 0; r < sp.size(); ++r) {
            text << sp.index(r).to_string() << ": " << mu.series().at(r).to_string() << '\n';
        }
        return text.str();
    }
    return dump(moments_to_json(mu));
}

int cmd_moments(const Options &o, std::ostream &out)
{
    emit(o, render_tuple(o, input_tuple(o)), out);
    return ok;
}

int cmd_cumulants(const Options &o, std::ostream &out)
{
    const UmbraTuple mu = input_tuple(o);
    emit(o, render_tuple(o, o.inverse ? from_cumulants(mu) : cumulant_tuple(mu)), out);
    return ok;
}

int cmd_gen_tsh(const Options &o, std::ostream &out)
{
    const ProcessSpec spec = process_spec(o);
    TshEngine engine(build(spec).one_step());
    std::vector<std::pair<MultiIndex, SpaceTimePolynomial>> rows;
    for (const auto &v : indices(o, true)) {
        rows.emplace_back(v, engine.polynomial(v).polynomial());
    }
    emit(o, render_rows(o, "Q", rows, {{"process", spec.to_json()}}), out);
    return ok;
}

std::vector<UmbraTuple> nu_tuples(const Options &o)
{
    std::vector<UmbraTuple> nu;
    for (const auto &f : o.nu_files) {
        nu.push_back(moments_from_json(read_json_file(f)));
    }
    if (nu.empty()) {
        throw parse_error("levy-sheffer needs --nu FILE (one per coordinate, or one to broadcast)");
    }
    return nu;
}

RationalMatrix identity(std::size_t d)
{
    RationalMatrix m(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
        m[i][i] = Rational(1);
    }
    return m;
}

SpaceTimePolynomial family_polynomial(const Options &o, const MultiIndex &v)
{
    const Polynomial time = parse_time(o.time);
    if (o.family == "hermite") {
        if (!o.sigma.empty()) {
            return hermite_sigma(v, matrix_from_json(json::parse(o.sigma)), time);
        }
        return hermite(v, o.matrix.empty() ? identity(o.d) : matrix_from_json(json::parse(o.matrix)), time);
    }
    if (o.family == "bernoulli") {
        return bernoulli(v, time);
    }
    if (o.family == "euler") {
        return euler(v, time);
    }
    if (o.family == "levy-sheffer") {
        if (o.mu_file.empty()) {
            throw parse_error("levy-sheffer needs --mu FILE");
        }
        const UmbraTuple mu = moments_from_json(read_json_file(o.mu_file));
        const auto nu = nu_tuples(o);
        if (nu.size() == 1) {
            return levy_sheffer(mu, nu[0], v, time);
        }
        return levy_sheffer(mu, nu, v, time);
    }
    throw parse_error("unknown family '" + o.family + "' (hermite, bernoulli, euler, levy-sheffer)");
}

int cmd_gen_family(const Options &o, std::ostream &out)
{
    std::vector<std::pair<MultiIndex, SpaceTimePolynomial>> rows;
    for (const auto &v : indices(o, true)) {
        rows.emplace_back(v, family_polynomial(o, v));
    }
    const std::string name = o.family == "hermite" ? "H" : o.family == "bernoulli" ? "B" : o.family == "euler" ? "E" : "V";
    emit(o, render_rows(o, name, rows, {{"family", o.family}, {"d", o.d}, {"t", o.time}}), out);
    return ok;
}

// Process sweep: harmonicity, zero mean and coefficient laws for every index.
json verify_process(const Options &o, bool &all)
{
    const ProcessSpec spec = process_spec(o);
    TshEngine engine(build(spec).one_step());
    json rows = json::array();
    for (const auto &v : indices(o, false)) {
        const TshPolynomial q = engine.polynomial(v);
        const HarmonicityReport h = engine.verify(q.polynomial());
        const bool zero = engine.expected_value(q.polynomial()).is_zero();
        const RecursionReport r = engine.recursion(v);
        const bool pass = h.holds && zero && r.leading_one && r.vanishes_at_zero && r.derived_recursion
                          && r.moment_identity;
        all = all && pass;
        json row = {{"v", v.to_string()},
                    {"harmonic", h.holds},
                    {"zero_mean", zero},
                    {"leading_one", r.leading_one},
                    {"vanishes_at_zero", r.vanishes_at_zero},
                    {"derived_recursion", r.derived_recursion},
                    {"moment_identity", r.moment_identity},
                    {"printed_recursion", r.printed_recursion},
                    {"printed_corollary", r.printed_corollary},
                    {"pass", pass}};
        if (!h.holds) {
            row["certificate"] = describe(h);
        }
        rows.push_back(row);
    }
    return {{"process", spec.to_json()}, {"results", rows}};
}

json family_check_json(const FamilyCheck &c)
{
    json j = {{"harmonic", c.harmonic}, {"zero_mean", c.zero_mean}};
    if (c.failure) {
        j["failure"] = c.failure->to_string();
        if (!c.certificate.holds) {
            j["certificate"] = describe(c.certificate);
        }
    }
    return j;
}

json verify_family(const Options &o, bool &all)
{
    const int n = o.max_order >= 0 ? o.max_order : o.order;
    json result = {{"family", o.family}, {"d", o.d}, {"max_order", n}};
    if (o.family == "bernoulli" || o.family == "euler") {
        const FamilyCheck c = o.family == "bernoulli" ? bernoulli_tsh_check(o.d, n) : euler_tsh_check(o.d, n);
        all = c.harmonic && c.zero_mean;
        result.update(family_check_json(c));
    } else if (o.family == "hermite") {
        const RationalMatrix c = o.matrix.empty() ? identity(o.d) : matrix_from_json(json::parse(o.matrix));
        const FamilyCheck check = hermite_tsh_check(c, n);
        bool scaling = true;
        for (const auto &v : graded_indices(o.d, n)) {
            scaling = scaling && hermite_scaling_identity(v, c);
        }
        all = check.harmonic && check.zero_mean && scaling;
        result.update(family_check_json(check));
        result["scaling_identity"] = scaling;
    } else if (o.family == "levy-sheffer") {
        if (o.mu_file.empty()) {
            throw parse_error("levy-sheffer needs --mu FILE");
        }
        const UmbraTuple mu = moments_from_json(read_json_file(o.mu_file));
        auto nu = nu_tuples(o);
        if (nu.size() == 1 && mu.dimension() > 1) {
            nu.assign(mu.dimension(), nu[0]);
        }
        const LevyShefferCheck c = levy_sheffer_tsh_check(mu, nu, n);
        all = c.derived.harmonic;
        result.update(family_check_json(c.derived));
        result["unnegated_process_harmonic"] = c.unnegated_holds;
    } else {
        throw parse_error("unknown family '" + o.family + "'");
    }
    return result;
}

json verify_input(const Options &o, bool &all)
{
    const ProcessSpec spec = process_spec(o);
    TshEngine engine(build(spec).one_step());
    const json doc = read_json_file(o.input);
    std::vector<TshPolynomial> polys;
    if (doc.contains("polynomials")) {
        for (const auto &p : doc.at("polynomials")) {
            polys.push_back(tsh_from_json(p));
        }
    } else {
        polys.push_back(tsh_from_json(doc));
    }
    json rows = json::array();
    for (const auto &q : polys) {
        const HarmonicityReport h = engine.verify(q.polynomial());
        all = all && h.holds;
        json row = {{"v", q.v.to_string()}, {"harmonic", h.holds}};
        if (!h.holds) {
            row["certificate"] = describe(h);
        }
        rows.push_back(row);
    }
    return {{"process", spec.to_json()}, {"results", rows}};
}

int cmd_verify(const Options &o, std::ostream &out, std::ostream &err)
{
    bool all = true;
    json result;
    if (!o.family.empty()) {
        result = verify_family(o, all);
    } else if (!o.input.empty()) {
        result = verify_input(o, all);
    } else if (!o.process.empty() || !o.spec_file.empty()) {
        result = verify_process(o, all);
    } else if (o.process.empty()) {
        throw parse_error("verify needs --family, --process/--spec, or --input with a process");
    }
    result["pass"] = all;
    if (o.format == "text") {
        emit(o, std::string(all ? "PASS" : "FAIL") + "\n" + result.dump(2), out);
    } else {
        emit(o, dump(result), out);
    }
    if (!all) {
        err << "verification failed\n";
        if (result.contains("certificate")) {
            err << result["certificate"].get<std::string>() << '\n';
        }
        if (result.contains("results")) {
            for (const auto &row : result["results"]) {
                if (row.contains("certificate")) {
                    err << row["v"].get<std::string>() << ": " << row["certificate"].get<std::string>() << '\n';
                }
            }
        }
        return verification_failed;
    }
    return ok;
}

int cmd_decompose(const Options &o, std::ostream &out, std::ostream &err)
{
    const ProcessSpec spec = process_spec(o);
    SpaceTimePolynomial p(spec.d);
    if (!o.poly.empty()) {
        p = SpaceTimePolynomial::from_polynomial(Polynomial::parse(o.poly), spec.d);
    } else if (!o.input.empty()) {
        const json doc = read_json_file(o.input);
        p = SpaceTimePolynomial(spec.d, coefficients_from_json(doc.at("coeffs")));
    } else {
        throw parse_error("decompose needs --poly TEXT or --input FILE");
    }
    const Decomposition dec = decompose(p, build(spec).one_step());
    json result = {{"process", spec.to_json()},
                   {"coefficients", coefficients_to_json(dec.coefficients)},
                   {"residual", coefficients_to_json(dec.residual.coefficients())},
                   {"exact", dec.exact()}};
    if (o.format == "text") {
        std::ostringstream text;
        for (const auto &[k, c] : dec.coefficients) {
            text << "c" << k.to_string() << " = " << c << '\n';
        }
        text << "residual: " << dec.residual.to_polynomial() << '\n';
        emit(o, text.str(), out);
    } else {
        emit(o, dump(result), out);
    }
    if (!dec.exact()) {
        err << "not time-space harmonic: nonzero residual " << dec.residual.to_polynomial() << '\n';
        return verification_failed;
    }
    return ok;
}

int cmd_mc_verify(const Options &o, std::ostream &out, std::ostream &err)
{
    SimConfig cfg;
    cfg.process = process_spec(o);
    cfg.paths = o.paths;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    const auto comma = o.times.find(',');
    if (comma == std::string::npos) {
        throw parse_error("--times expects s,t");
    }
    cfg.s = Rational::parse(o.times.substr(0, comma));
    cfg.t = Rational::parse(o.times.substr(comma + 1));
    if (!o.v.empty() || o.max_order >= 0) {
        cfg.indices = indices(o, false);
    }
    const SimReport report = simulate_and_test(cfg);
    emit(o, o.format == "json" ? dump(report.to_json()) : report.table(), out);
    if (!report.pass) {
        err << "Monte Carlo battery failed\n";
        return verification_failed;
    }
    return ok;
}

void apply_order_override(std::ostream &err)
{
    if (const char *env = std::getenv("UMBRA_MAX_ORDER")) {
        try {
            EnumerationLimits limits = default_limits();
            limits.max_order = std::stoi(env);
            set_default_limits(limits);
        } catch (const std::exception &) {
            err << "ignoring malformed UMBRA_MAX_ORDER='" << env << "'\n";
        }
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Symbolic moments, cumulants and time-space harmonic polynomials of Levy processes"};
    app.require_subcommand(1);
    app.add_option("--d", o.d, "Dimension")->check(CLI::PositiveNumber);
    app.add_option("--order", o.order, "Truncation order")->check(CLI::NonNegativeNumber);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text", "latex"}));
    app.add_option("--output,-o", o.output, "Write output to a file");
    app.add_option("--seed", o.seed, "Random seed");
    app.fallthrough();

    auto add_process = [&](CLI::App *sub) {
        sub->add_option("--process", o.process, "brownian, poisson, gamma, ig, bernoulli, euler, custom:FILE");
        sub->add_option("--spec", o.spec_file, "Process spec JSON file");
        sub->add_option("--param", o.params, "Process parameter key=value (rate, shape, scale, a, b)");
        sub->add_option("--C", o.matrix, "Brownian/Hermite matrix as JSON rows");
        sub->add_option("--coupling", o.coupling, "diagonal or independent")
            ->check(CLI::IsMember({"diagonal", "independent"}));
    };
    auto add_index = [&](CLI::App *sub) {
        sub->add_option("--v", o.v, "Multi-index, e.g. \"(1,2)\"");
        sub->add_option("--max-order", o.max_order, "All indices up to this total order");
    };

    auto *partitions_cmd = app.add_subcommand("partitions", "List the partitions of a multi-index");
    partitions_cmd->add_option("--v", o.v, "Multi-index")->required();

    auto *moments_cmd = app.add_subcommand("moments", "Moment array of a process or moment file");
    add_process(moments_cmd);
    moments_cmd->add_option("--input", o.input, "Moment file");
    moments_cmd->add_flag("--at-time", o.at_time, "Moments of t.mu instead of the one-step tuple");

    auto *cumulants_cmd = app.add_subcommand("cumulants", "Cumulant tuple (or moments from cumulants)");
    add_process(cumulants_cmd);
    cumulants_cmd->add_option("--input", o.input, "Moment file");
    cumulants_cmd->add_flag("--at-time", o.at_time, "Use t.mu instead of the one-step tuple");
    cumulants_cmd->add_flag("--inverse", o.inverse, "Treat the input as cumulants and return moments");

    auto *tsh_cmd = app.add_subcommand("gen-tsh", "Generate time-space harmonic polynomials Q_v");
    add_process(tsh_cmd);
    add_index(tsh_cmd);

    auto *family_cmd = app.add_subcommand("gen-family", "Generate a named polynomial family");
    family_cmd->add_option("--family", o.family, "hermite, bernoulli, euler, levy-sheffer")->required();
    add_index(family_cmd);
    family_cmd->add_option("--t", o.time, "Time: symbolic t or a rational");
    family_cmd->add_option("--C", o.matrix, "Hermite matrix C as JSON rows");
    family_cmd->add_option("--sigma", o.sigma, "Hermite covariance as JSON rows");
    family_cmd->add_option("--mu", o.mu_file, "Levy-Sheffer g tuple (moment file)");
    family_cmd->add_option("--nu", o.nu_files, "Levy-Sheffer h tuples (moment files)");

    auto *verify_cmd = app.add_subcommand("verify", "Check harmonicity and coefficient laws");
    add_process(verify_cmd);
    add_index(verify_cmd);
    verify_cmd->add_option("--family", o.family, "hermite, bernoulli, euler, levy-sheffer");
    verify_cmd->add_option("--input", o.input, "gen-tsh output to re-check against --process");
    verify_cmd->add_option("--mu", o.mu_file, "Levy-Sheffer g tuple (moment file)");
    verify_cmd->add_option("--nu", o.nu_files, "Levy-Sheffer h tuples (moment files)");

    auto *decompose_cmd = app.add_subcommand("decompose", "Write a polynomial in the Q_k basis");
    add_process(decompose_cmd);
    decompose_cmd->add_option("--poly", o.poly, "Polynomial text in x (or x1..xd) and t");
    decompose_cmd->add_option("--input", o.input, "JSON with a \"coeffs\" map");

    auto *mc_cmd = app.add_subcommand("mc-verify", "Monte Carlo check of zero mean and martingale increments");
    add_process(mc_cmd);
    add_index(mc_cmd);
    mc_cmd->add_option("--paths", o.paths, "Number of paths");
    mc_cmd->add_option("--times", o.times, "Times s,t");
    mc_cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << e.what() << '\n';
        return usage_error;
    }

    apply_order_override(err);
    if (o.format == "latex" && mc_cmd->parsed()) {
        err << "latex output is not available for mc-verify\n";
        return usage_error;
    }
    if (mc_cmd->parsed() && o.format == "json" && !app.get_option("--format")->count()) {
        o.format = "text";
    }
    try {
        if (o.order > default_limits().max_order) {
            throw order_error("order " + std::to_string(o.order) + " exceeds the limit "
                              + std::to_string(default_limits().max_order) + " (raise UMBRA_MAX_ORDER)");
        }
        if (partitions_cmd->parsed()) {
            return cmd_partitions(o, out);
        }
        if (moments_cmd->parsed()) {
            return cmd_moments(o, out);
        }
        if (cumulants_cmd->parsed()) {
            return cmd_cumulants(o, out);
        }
        if (tsh_cmd->parsed()) {
            return cmd_gen_tsh(o, out);
        }
        if (family_cmd->parsed()) {
            return cmd_gen_family(o, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(o, out, err);
        }
        if (decompose_cmd->parsed()) {
            return cmd_decompose(o, out, err);
        }
        if (mc_cmd->parsed()) {
            return cmd_mc_verify(o, out, err);
        }
    } catch (const umbral::error &e) {
        err << "error: " << e.what() << '\n';
        return spec_error;
    } catch (const nlohmann::json::exception &e) {
        err << "error: malformed JSON argument: " << e.what() << '\n';
        return spec_error;
    }
    return usage_error;
}

} // namespace umbral::cli
