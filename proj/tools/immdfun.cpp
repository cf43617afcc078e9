// immdfun command-line tool: immanants, verification suites, D-function tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <immdfun/suites.hpp>

using namespace immdfun;

namespace {

enum class Format { json, csv, pretty };

struct RunConfig {
    int m = 0;
    int n = 0;
    std::vector<int> partition;
    std::vector<int> rows, cols;
    std::uint64_t seed = default_seed;
    int samples = 0; // 0: suite default
    std::optional<double> tol;
    std::string out_path;
    Format format = Format::json;
    std::string matrix;
    bool check_duality = false;
    bool all_selectors = true;
    int immanant_cap = default_immanant_cap;
    std::size_t max_dim = 0; // 0: keep IMMDFUN_MAX_DIM / built-in default
    std::vector<int> irrep;
    std::vector<double> euler;
    std::optional<std::uint64_t> haar_seed;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line and column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(const std::string &text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

cplx parse_entry(const nlohmann::json &e, std::size_t i, std::size_t j) {
    if (e.is_number())
        return e.get<double>();
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    throw ParseError("matrix entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     ") must be a number or an [re, im] pair");
}

/// Row-major JSON array of rows; entries are [re, im] pairs or plain reals.
/// `source` is inline JSON when it starts with '[', otherwise a file path.
ComplexMatrix load_matrix(const std::string &source) {
    std::string text, origin = "inline matrix";
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '[') {
        text = source;
    } else {
        std::ifstream in(source);
        if (!in)
            throw ParseError("cannot open matrix file '" + source + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        origin = "matrix file '" + source + "'";
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(origin + ": line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": malformed JSON");
    }
    if (!j.is_array() || j.empty())
        throw ParseError(origin + ": expected a non-empty array of rows");
    const std::size_t n = j.size();
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw ParseError(origin + ": row " + std::to_string(i + 1) + " must have " + std::to_string(n) +
                             " entries (square matrix)");
        for (std::size_t k = 0; k < n; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_entry(j[i][k], i, k);
    }
    return m;
}

Partition partition_arg(const RunConfig &cfg) {
    if (cfg.partition.empty())
        throw UsageError("--partition is required");
    return Partition(cfg.partition);
}

std::string join(const std::vector<int> &v, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

class Emitter {
  public:
    explicit Emitter(const RunConfig &cfg) : format_(cfg.format) {
        if (!cfg.out_path.empty()) {
            file_.open(cfg.out_path);
            if (!file_)
                throw UsageError("cannot open output file '" + cfg.out_path + "'");
        }
        if (format_ == Format::csv)
            os() << "suite,m,partition,selector_rows,selector_cols,seed,residual,pass\n";
    }

    void emit(const VerificationReport &rep) {
        char residual[32];
        std::snprintf(residual, sizeof residual, "%.3e", rep.residual);
        switch (format_) {
        case Format::json:
            os() << rep.to_json().dump() << '\n';
            break;
        case Format::csv:
            os() << rep.suite << ',' << rep.m << ',' << join(rep.partition) << ',' << join(rep.selector_rows) << ','
                 << join(rep.selector_cols) << ',' << rep.seed << ',' << residual << ','
                 << (rep.pass ? "true" : "false") << '\n';
            break;
        case Format::pretty:
            os() << (rep.pass ? "pass " : "FAIL ") << rep.suite;
            if (rep.m)
                os() << "  m=" << rep.m;
            if (!rep.partition.empty())
                os() << "  {" << join(rep.partition, ',') << '}';
            if (!rep.selector_rows.empty())
                os() << "  rows(" << join(rep.selector_rows, ',') << ") cols(" << join(rep.selector_cols, ',') << ')';
            os() << "  residual " << residual << '\n';
            break;
        }
        all_pass_ = all_pass_ && rep.pass;
        ++count_;
    }

    void summary() {
        if (format_ == Format::pretty)
            os() << count_ << " report(s), " << (all_pass_ ? "all pass" : "FAILURES") << '\n';
    }

    bool all_pass() const { return all_pass_; }
    std::ostream &os() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

  private:
    Format format_;
    std::ofstream file_;
    bool all_pass_ = true;
    int count_ = 0;
};

int cmd_immanant(const RunConfig &cfg) {
    const auto p = partition_arg(cfg);
    ComplexMatrix full;
    std::uint64_t seed = 0;
    if (!cfg.matrix.empty()) {
        full = load_matrix(cfg.matrix);
    } else if (cfg.m > 0) {
        seed = cfg.seed;
        full = haar_random_unitary(cfg.m, seed).matrix();
    } else {
        throw UsageError("supply --matrix or --m (Haar sample with --seed)");
    }

    std::vector<int> rows = cfg.rows, cols = cfg.cols;
    if (rows.empty() != cols.empty())
        throw UsageError("--rows and --cols go together");
    if (rows.empty()) {
        rows.resize(full.rows());
        std::iota(rows.begin(), rows.end(), 1);
        cols = rows;
    }
    const SubmatrixSelector sel(rows, cols);
    if (sel.size() != p.n())
        throw UsageError("partition " + p.str() + " needs a " + std::to_string(p.n()) + "x" + std::to_string(p.n()) +
                         " matrix, selection is " + std::to_string(sel.size()) + "x" + std::to_string(sel.size()));
    const cplx value = immanant(p, submatrix(full, sel), cfg.immanant_cap);

    VerificationReport rep;
    rep.suite = "immanant";
    rep.m = static_cast<int>(full.rows());
    rep.partition = p.parts();
    rep.selector_rows = rows;
    rep.selector_cols = cols;
    rep.seed = seed;
    rep.pass = true;
    rep.details["value"] = {value.real(), value.imag()};
    if (cfg.check_duality) {
        const cplx dual = immanant_via_duality(p, rows, cols, full);
        rep.residual = std::abs(dual - value);
        rep.pass = rep.residual < cfg.tol.value_or(1e-10);
        rep.details["duality_value"] = {dual.real(), dual.imag()};
    }

    Emitter out(cfg);
    if (cfg.format == Format::pretty) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "Imm^%s = %.15g %+.15gi\n", p.str().c_str(), value.real(), value.imag());
        out.os() << buf;
        if (cfg.check_duality)
            out.emit(rep);
    } else {
        out.emit(rep);
    }
    return out.all_pass() ? 0 : 1;
}

std::vector<int> ms_or(const RunConfig &cfg, std::vector<int> fallback) {
    return cfg.m > 0 ? std::vector<int>{cfg.m} : fallback;
}

int samples_or(const RunConfig &cfg, int fallback) { return cfg.samples > 0 ? cfg.samples : fallback; }

int cmd_verify(const std::string &suite, const RunConfig &cfg) {
    std::vector<VerificationReport> reps;
    if (suite == "kostant") {
        reps = suite_kostant(ms_or(cfg, {2, 3, 4}), samples_or(cfg, 25), cfg.seed, cfg.tol.value_or(1e-9));
    } else if (suite == "principal-submatrices" || suite == "corollary4") {
        reps = suite_principal_submatrices(ms_or(cfg, {4, 5}), samples_or(cfg, 10), cfg.seed, cfg.tol.value_or(1e-9));
    } else if (suite == "littlewood") {
        reps = suite_littlewood(samples_or(cfg, 100), cfg.seed, cfg.tol.value_or(1e-9));
    } else if (suite == "conjecture") {
        if (cfg.partition.empty() && cfg.m == 0) {
            reps = suite_conjecture_named(cfg.seed, cfg.tol.value_or(1e-8));
        } else {
            const int m = cfg.m > 0 ? cfg.m : 4;
            if (m < 4 || m > 5)
                throw UsageError("conjecture scans support --m 4 or 5");
            const auto p = partition_arg(cfg);
            if (p.n() < 3 || p.n() > 4)
                throw UsageError("conjecture scans need a partition of 3 or 4");
            reps = suite_conjecture(m, p, cfg.all_selectors, cfg.seed, cfg.tol.value_or(1e-8));
        }
    } else if (suite == "plethysm-su2") {
        reps = {suite_plethysm_su2(cfg.seed, cfg.tol.value_or(1e-8))};
    } else if (suite == "plethysm-su3") {
        reps = {suite_plethysm_su3(cfg.seed, cfg.tol.value_or(1e-7))};
    } else if (suite == "su2-closed-forms") {
        reps = suite_su2_closed_forms(samples_or(cfg, 50), cfg.seed, cfg.tol.value_or(1e-12));
    } else if (suite == "su3-identities") {
        reps = suite_su3_identities(samples_or(cfg, 25), cfg.seed, cfg.tol.value_or(1e-10));
    } else if (suite == "structural") {
        reps = suite_structural(cfg.seed);
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }
    Emitter out(cfg);
    for (const auto &r : reps)
        out.emit(r);
    out.summary();
    return out.all_pass() ? 0 : 1;
}

int cmd_dump(const RunConfig &cfg) {
    SUIrrepLabel label;
    if (!cfg.irrep.empty())
        label = SUIrrepLabel(cfg.irrep);
    else if (cfg.m > 0 && !cfg.partition.empty())
        label = SUIrrepLabel::from_partition(Partition(cfg.partition), cfg.m);
    else
        throw UsageError("supply --irrep, or --m with --partition");
    const int m = label.m();

    std::optional<UnitaryElement> u;
    if (!cfg.euler.empty()) {
        if (m != 2 || cfg.euler.size() != 3)
            throw UsageError("--euler takes three angles and needs an SU(2) irrep");
        u = su2_euler(cfg.euler[0], cfg.euler[1], cfg.euler[2]);
    } else if (cfg.haar_seed) {
        u = haar_random_unitary(m, *cfg.haar_seed);
    } else if (!cfg.matrix.empty()) {
        u = UnitaryElement(load_matrix(cfg.matrix), cfg.tol.value_or(UnitaryElement::default_tol));
    } else {
        u = UnitaryElement(ComplexMatrix::Identity(m, m));
    }
    LiftOptions opt;
    opt.branch_shift = true;
    const auto rep = lift(label, *u, opt);
    if (cfg.out_path.empty()) {
        dump_dfunctions(rep, std::cout);
    } else {
        std::ofstream f(cfg.out_path);
        if (!f)
            throw UsageError("cannot open output file '" + cfg.out_path + "'");
        dump_dfunctions(rep, f);
    }
    return 0;
}

void common_flags(CLI::App *app, RunConfig &cfg) {
    app->add_option("--m", cfg.m, "Group rank m of SU(m)")->check(CLI::Range(1, 12));
    app->add_option("--N", cfg.n, "Number of tensor factors (defaults to the partition size)");
    app->add_option("--partition", cfg.partition, "Partition, e.g. 2,1")->delimiter(',');
    app->add_option("--seed", cfg.seed, "Random seed (default " + std::to_string(default_seed) + ")");
    app->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
    app->add_option("--out", cfg.out_path, "Write output to this file");
    app->add_option("--format", cfg.format, "json, csv or pretty")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}, {"pretty", Format::pretty}}));
    app->add_option("--max-dim", cfg.max_dim, "Irrep dimension cap (default 512, or IMMDFUN_MAX_DIM)");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Immanants of SU(m) matrices and their D-function expansions"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string suite;

    auto *imm = app.add_subcommand("immanant", "Immanant of a matrix or of a submatrix");
    common_flags(imm, cfg);
    imm->add_option("--matrix", cfg.matrix, "JSON matrix (inline or file path), entries [re, im]");
    imm->add_option("--rows", cfg.rows, "Row indices, increasing, 1-based")->delimiter(',');
    imm->add_option("--cols", cfg.cols, "Column indices, distinct, 1-based")->delimiter(',');
    imm->add_flag("--check-duality", cfg.check_duality, "Cross-check against the tensor-power evaluation");
    imm->add_option("--immanant-cap", cfg.immanant_cap, "Largest side evaluated by enumeration")
        ->check(CLI::Range(1, 12));

    auto *ver = app.add_subcommand("verify", "Run a verification suite, one JSON report per line");
    common_flags(ver, cfg);
    ver->add_option("suite", suite,
                    "kostant, principal-submatrices (alias corollary4), littlewood, conjecture, plethysm-su2, plethysm-su3, "
                    "su2-closed-forms, su3-identities, structural")
        ->required();
    ver->add_option("--samples", cfg.samples, "Haar samples per configuration")->check(CLI::PositiveNumber);
    ver->add_flag("!--principal-only,!--skip-principal", cfg.all_selectors,
                  "Conjecture scan: skip principal selector pairs");

    auto *dump = app.add_subcommand("dump-dfunctions", "All D-functions of one irrep at one group element");
    common_flags(dump, cfg);
    dump->add_option("--irrep", cfg.irrep, "u(m) row, e.g. 2,1,0")->delimiter(',');
    dump->add_option("--euler", cfg.euler, "SU(2) Euler angles alpha,beta,gamma")->delimiter(',');
    dump->add_option("--haar", cfg.haar_seed, "Use the Haar sample with this seed");
    dump->add_option("--matrix", cfg.matrix, "JSON matrix (inline or file path), entries [re, im]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cfg.max_dim > 0)
            setenv("IMMDFUN_MAX_DIM", std::to_string(cfg.max_dim).c_str(), 1);
        if (cfg.n > 0 && !cfg.partition.empty() &&
            cfg.n != std::accumulate(cfg.partition.begin(), cfg.partition.end(), 0))
            throw UsageError("--N differs from the partition size");
        if (imm->parsed())
            return cmd_immanant(cfg);
        if (ver->parsed())
            return cmd_verify(suite, cfg);
        return cmd_dump(cfg);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError &e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError &e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
