// troplin: stable tropical lines through two columns of a normal idempotent
// max-plus matrix, as exact metric caterpillar trees.
//
// Subcommands: validate, line, segment, gen, closure.  Matrix documents are
// JSON or bare whitespace text; "-" reads stdin.  Exit codes: 0 success,
// 1 domain failure (non-NI input, degenerate pair, verification failure),
// 2 usage or parse failure.

#include <troplin/troplin.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw troplin::parse_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("TROPLIN_SEED");
    if (!env || *env == '\0') return 0;
    std::uint64_t value = 0;
    const char* end = env + std::string_view(env).size();
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument(std::string("TROPLIN_SEED is not an unsigned integer: ") +
                                    env);
    return value;
}

struct Options {
    std::string input;          // matrix document path, "-" for stdin
    std::vector<int> cols{1, 2};
    std::string format = "json";
    bool verify = false;
    int n = 0;
    long long low = -20;
    long long high = -1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string fix_cols;
    std::vector<int> at{1, 2};
};

std::pair<int, int> checked_pair(const std::vector<int>& cols, int n, const char* flag) {
    if (cols.size() != 2) throw std::invalid_argument(std::string(flag) + ": need two indices");
    const int i = cols[0], j = cols[1];
    if (i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument(std::string(flag) + ": indices must lie in 1.." +
                                    std::to_string(n));
    if (i == j) throw std::invalid_argument(std::string(flag) + ": the two columns must differ");
    return {i - 1, j - 1};
}

int cmd_validate(const Options& opt) {
    const troplin::Matrix A = troplin::parse_matrix_document(slurp(opt.input));
    const troplin::NiReport rep = troplin::validate_ni(A);
    if (rep.ok) {
        std::cout << "ok: normal idempotent matrix of order " << A.rows() << "\n";
        return 0;
    }
    std::cout << "not normal idempotent: " << rep.describe() << "\n";
    return 1;
}

int cmd_line(const Options& opt) {
    const troplin::Matrix raw = troplin::parse_matrix_document(slurp(opt.input));
    const auto [i, j] = checked_pair(opt.cols, raw.rows(), "--cols");
    const troplin::NiMatrix A = troplin::NiMatrix::certify(raw);
    const troplin::MetricTree tree = troplin::build_tree(A, i, j);

    if (opt.verify) {
        const troplin::VerificationReport rep = troplin::verify_tree(A, i, j, tree);
        if (!rep.ok()) {
            // the builder and the oracle disagree about our own output: that
            // is an internal bug, not a property of the input
            std::cerr << "verification failed:\n" << rep.describe();
            return 3;
        }
        std::cerr << "verification: all " << rep.checks.size() << " checks passed\n";
    }
    if (opt.format == "newick")
        std::cout << troplin::to_newick(tree);
    else
        std::cout << troplin::tree_to_json(tree);
    return 0;
}

int cmd_segment(const Options& opt) {
    const troplin::Matrix raw = troplin::parse_matrix_document(slurp(opt.input));
    const auto [i, j] = checked_pair(opt.cols, raw.rows(), "--cols");
    const troplin::NiMatrix A = troplin::NiMatrix::certify(raw);
    const troplin::ProjectivePoint p(A.matrix().column(i));
    const troplin::ProjectivePoint q(A.matrix().column(j));
    std::cout << troplin::segment_to_json(troplin::tconv(p, q));
    return 0;
}

int cmd_gen(const Options& opt) {
    if (!(opt.low <= opt.high && opt.high <= 0))
        throw std::invalid_argument("--low/--high: need low <= high <= 0");
    troplin::NiMatrix A = [&] {
        if (!opt.fix_cols.empty()) {
            const troplin::Matrix cols =
                troplin::parse_two_column_document(slurp(opt.fix_cols));
            if (opt.n != 0 && opt.n != cols.rows())
                throw std::invalid_argument("--n disagrees with the fixed-column document");
            const auto [i, j] = checked_pair(opt.at, cols.rows(), "--at");
            return troplin::complete_two_columns(cols.column(0), cols.column(1), i, j,
                                                 opt.low, opt.high, opt.seed);
        }
        if (opt.n < 2) throw std::invalid_argument("--n: need an order of at least 2");
        return troplin::random_ni(opt.n, opt.low, opt.high, opt.seed);
    }();
    std::cout << troplin::matrix_to_json(A.matrix());
    return 0;
}

int cmd_closure(const Options& opt) {
    const troplin::Matrix A = troplin::parse_matrix_document(slurp(opt.input));
    const troplin::NiMatrix B = troplin::closure(A);
    std::cout << troplin::matrix_to_json(B.matrix());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable tropical lines from normal idempotent max-plus matrices"};
    app.require_subcommand(1);
    Options opt;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", opt.input, "matrix document (JSON or bare text), - for stdin")
            ->required();
    };
    auto add_cols = [&](CLI::App* cmd) {
        cmd->add_option("--cols", opt.cols, "1-based column pair i j (default 1 2)")
            ->expected(2);
    };

    CLI::App* validate = app.add_subcommand(
        "validate", "check the normal idempotent axioms, listing violations");
    add_input(validate);

    CLI::App* line = app.add_subcommand(
        "line", "build the stable line through two columns as a metric tree");
    add_input(line);
    add_cols(line);
    line->add_option("--format", opt.format, "output form: json or newick")
        ->check(CLI::IsMember({"json", "newick"}));
    line->add_flag("--verify", opt.verify, "re-check the tree with the independent oracle");

    CLI::App* segment = app.add_subcommand(
        "segment", "emit the tropical segment between two columns");
    add_input(segment);
    add_cols(segment);

    CLI::App* gen = app.add_subcommand(
        "gen", "generate a seeded random normal idempotent matrix");
    gen->add_option("--n", opt.n, "matrix order");
    gen->add_option("--low", opt.low, "least allowed off-diagonal sample (default -20)");
    gen->add_option("--high", opt.high, "greatest allowed off-diagonal sample (default -1)");
    CLI::Option* seed_opt =
        gen->add_option("--seed", opt.seed, "PRNG seed (default: TROPLIN_SEED or 0)");
    gen->add_option("--fix-cols", opt.fix_cols,
                    "two-column document whose columns the output must preserve");
    gen->add_option("--at", opt.at, "1-based positions for the fixed columns (default 1 2)")
        ->expected(2);

    CLI::App* closure = app.add_subcommand(
        "closure", "complete a normal matrix to its idempotent closure");
    add_input(closure);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed() && !seed_opt->count()) opt.seed = seed_from_env();
        if (validate->parsed()) return cmd_validate(opt);
        if (line->parsed()) return cmd_line(opt);
        if (segment->parsed()) return cmd_segment(opt);
        if (gen->parsed()) return cmd_gen(opt);
        if (closure->parsed()) return cmd_closure(opt);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const troplin::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const troplin::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
