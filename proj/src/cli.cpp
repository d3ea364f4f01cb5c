#include <tropopt/cli.hpp>

#include <tropopt/io.hpp>
#include <tropopt/plot.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace tropopt::cli {

namespace {

using io::Mat;
using io::Scalar;
using io::SF;
using io::Vec;

std::string read_input(const std::string& path, std::istream& in)
{
    if (path == "-") {
        return { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    }
    return { std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>() };
}

void write_output(const std::string& path, std::ostream& out, const std::string& text)
{
    if (path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error(ErrorCode::ValidationError, "cannot write '" + path + "'");
    }
    file << text;
}

EnumerationOptions enumeration(const Options& opts)
{
    return { opts.budget, opts.exhaustive };
}

template <class Fn>
int guarded(Streams io, Fn&& fn)
{
    try {
        return fn();
    } catch (const BudgetExceeded& e) {
        io.err << "error: " << e.what() << " (" << e.partial().size()
               << " selections enumerated before stopping; raise --budget)\n";
        return BudgetExhausted;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return exit_code(e.code());
    }
}

std::string row_text(const Vec& v)
{
    std::string s = "(";
    for (Index i = 0; i < v.rows(); ++i) {
        s += (i == 0 ? "" : ", ") + to_string(v(i));
    }
    return s + ")";
}

std::string columns_text(const SelectionMatrix& sel)
{
    std::string s = "(";
    for (std::size_t i = 0; i < sel.chosen_col.size(); ++i) {
        s += (i == 0 ? "" : ", ") + std::to_string(sel.chosen_col[i] + 1);
    }
    return s + ")";
}

// Accumulates PASS/FAIL lines of a verification report.
class Report {
public:
    void check(bool ok, const std::string& what)
    {
        text_ += (ok ? "PASS  " : "FAIL  ") + what + "\n";
        ok_ = ok_ && ok;
    }

    const std::string& text() const { return text_; }
    bool ok() const { return ok_; }

private:
    std::string text_;
    bool ok_ = true;
};

const Mat* find_matrix(const io::SolutionDocument& sol, const std::string& name, Report& report)
{
    const auto it = sol.matrices.find(name);
    if (it == sol.matrices.end()) {
        report.check(false, "solution lists matrix " + name);
        return nullptr;
    }
    return &it->second;
}

const Vec* find_vector(const io::SolutionDocument& sol, const std::string& name, Report& report)
{
    const auto it = sol.vectors.find(name);
    if (it == sol.vectors.end()) {
        report.check(false, "solution lists vector " + name);
        return nullptr;
    }
    return &it->second;
}

void verify_span_solution(const SpanProblem<SF>& prob, const io::SolutionDocument& sol, Report& report)
{
    report.check(sol.delta == prob.delta(),
        "minimum " + to_string(sol.delta) + " equals (A q)^- p = " + to_string(prob.delta()));

    const Mat* gens = find_matrix(sol, "generators", report);
    if (gens == nullptr) {
        return;
    }
    if (gens->rows() != prob.a().cols() || gens->cols() == 0 || !is_column_regular(*gens)) {
        report.check(false, "generator matrix has " + std::to_string(prob.a().cols()) + " rows and no zero column");
        return;
    }
    for (Index j = 0; j < gens->cols(); ++j) {
        const Vec s = gens->col(j);
        bool ok = false;
        std::string value = "undefined";
        try {
            const Scalar obj = objective(prob, s);
            value = to_string(obj);
            ok = verify_optimal(prob, s) && obj == prob.delta();
        } catch (const Error&) {
        }
        report.check(ok, "generator " + std::to_string(j + 1) + " " + row_text(s) + " attains " + value);
    }
    report.check(membership(GeneratorSet<SF>(*gens), prob.q()), "q lies in the span of the generators");

    if (const Mat* ext = find_matrix(sol, "extended", report)) {
        bool covered = ext->rows() == gens->rows();
        for (Index j = 0; covered && j < ext->cols(); ++j) {
            covered = depends_on(*gens, Vec(ext->col(j)));
        }
        report.check(covered, "extended generators lie in the span of the generators");
    }
}

void verify_schedule_solution(const ScheduleInstance<SF>& inst, const io::SolutionDocument& sol, Report& report)
{
    const Mat star = solve_subinvariant(inst.precedence());
    const Mat d = mul(inst.a(), star);
    const Scalar delta = reduced_problem(d).delta();
    report.check(sol.delta == delta, "minimum span " + to_string(sol.delta) + " equals " + to_string(delta));

    const Mat* xg = find_matrix(sol, "x_generators", report);
    const Mat* yg = find_matrix(sol, "y_generators", report);
    const Vec* bound = find_vector(sol, "coeff_bound", report);
    const Vec* lx = find_vector(sol, "latest_x", report);
    const Vec* ly = find_vector(sol, "latest_y", report);
    if (xg == nullptr || yg == nullptr || bound == nullptr || lx == nullptr || ly == nullptr) {
        return;
    }
    const Index n = inst.size();
    const bool shapes = xg->rows() == n && yg->rows() == n && xg->cols() == yg->cols() && xg->cols() > 0
        && bound->rows() == xg->cols() && lx->rows() == n && ly->rows() == n;
    report.check(shapes, "generator and bound shapes agree");
    if (!shapes) {
        return;
    }
    report.check(equal(mul(inst.a(), *xg), *yg), "finish-time generators equal A times start-time generators");
    for (Index j = 0; j < yg->cols(); ++j) {
        const Vec y = yg->col(j);
        const bool ok = is_regular(y) && span_seminorm(y) == delta;
        report.check(ok, "finish-time generator " + std::to_string(j + 1) + " " + row_text(y) + " has span "
                + (is_regular(y) ? to_string(span_seminorm(y)) : std::string("undefined")));
    }
    bool bound_ok = false;
    try {
        bound_ok = equal(solve_upper_bound(*yg, inst.f()), *bound);
    } catch (const Error&) {
    }
    report.check(bound_ok, "coefficient bound " + row_text(*bound) + " is the greatest meeting the deadlines");

    report.check(equal(mul(*xg, *bound), *lx) && equal(mul(*yg, *bound), *ly),
        "latest schedule is generated by the coefficient bound");
    const ScheduleReport<SF> check = check_schedule(inst, *lx, *ly);
    report.check(check.feasible() && check.span == delta,
        "latest schedule x = " + row_text(*lx) + ", y = " + row_text(*ly) + " is feasible with span "
            + to_string(check.span));
}

SpanProblem<SF> schedule_problem(const io::ProblemDocument& doc)
{
    const ScheduleInstance<SF> inst = io::to_schedule(doc);
    return reduced_problem(Mat(mul(inst.a(), solve_subinvariant(inst.precedence()))));
}

std::string failed_families(const ConstraintCheck& c)
{
    std::string s;
    auto add = [&s](bool ok, const char* name) {
        if (!ok) {
            s += s.empty() ? name : std::string(", ") + name;
        }
    };
    add(c.start_finish, "start-finish");
    add(c.start_start, "start-start");
    add(c.finish_start, "finish-start");
    add(c.late_finish, "late-finish");
    return s;
}

} // namespace

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InfeasiblePrecedence:
    case ErrorCode::InfeasibleDeadline:
    case ErrorCode::SpectralConditionViolated:
        return Infeasible;
    case ErrorCode::EnumerationBudgetExceeded:
        return BudgetExhausted;
    default:
        return BadInput;
    }
}

int cmd_solve(const Options& opts, Streams io)
{
    return guarded(io, [&] {
        const io::ProblemDocument doc = io::parse_problem(read_input(opts.input, io.in));
        std::string text;
        if (doc.kind == io::ProblemKind::Span) {
            const SpanProblem<SF> prob = io::to_span_problem(doc);
            const CompleteSolution<SF> sol = complete_solution(prob, enumeration(opts));
            text = io::serialize_solution(io::make_span_solution(doc, prob, sol, opts.exhaustive));
        } else {
            ScheduleSolution<SF> sol = solve_schedule(io::to_schedule(doc), enumeration(opts));
            if (opts.compact) {
                sol = compact_generators(sol);
            }
            text = io::serialize_solution(io::make_schedule_solution(doc, sol, opts.exhaustive));
        }
        write_output(opts.output, io.out, text);
        return static_cast<int>(Ok);
    });
}

int cmd_verify(const VerifyOptions& opts, Streams io)
{
    return guarded(io, [&] {
        if (opts.x.empty() && opts.solution.empty()) {
            throw Error(ErrorCode::ValidationError, "nothing to verify: give --x or --solution");
        }
        const io::ProblemDocument doc = io::parse_problem(read_input(opts.input, io.in));
        if (!opts.y.empty() && opts.y.size() != opts.x.size()) {
            throw Error(ErrorCode::ValidationError, "--y must be given once per --x");
        }
        Report report;

        if (doc.kind == io::ProblemKind::Span) {
            const SpanProblem<SF> prob = io::to_span_problem(doc);
            if (!opts.solution.empty()) {
                const io::SolutionDocument sol = io::parse_solution(read_input(opts.solution, io.in));
                report.check(sol.kind == doc.kind && sol.input_hash == io::input_hash(doc),
                    "solution belongs to this problem (" + sol.input_hash + ")");
                verify_span_solution(prob, sol, report);
            }
            for (const std::string& text : opts.x) {
                const Vec x = io::parse_vector(text);
                const Scalar obj = objective(prob, x);
                report.check(verify_optimal(prob, x),
                    "x = " + row_text(x) + ": objective " + to_string(obj) + ", minimum " + to_string(prob.delta()));
            }
        } else {
            const ScheduleInstance<SF> inst = io::to_schedule(doc);
            if (!opts.solution.empty()) {
                const io::SolutionDocument sol = io::parse_solution(read_input(opts.solution, io.in));
                report.check(sol.kind == doc.kind && sol.input_hash == io::input_hash(doc),
                    "solution belongs to this problem (" + sol.input_hash + ")");
                verify_schedule_solution(inst, sol, report);
            }
            const Scalar delta = reduced_problem(mul(inst.a(), solve_subinvariant(inst.precedence()))).delta();
            for (std::size_t k = 0; k < opts.x.size(); ++k) {
                const Vec x = io::parse_vector(opts.x[k]);
                if (x.rows() != inst.size()) {
                    throw Error(ErrorCode::ShapeMismatch, "x needs " + std::to_string(inst.size()) + " entries");
                }
                const Vec y = opts.y.empty() ? Vec(mul(inst.a(), x)) : io::parse_vector(opts.y[k]);
                const ScheduleReport<SF> check = check_schedule(inst, x, y);
                std::string failures;
                for (std::size_t i = 0; i < check.rows.size(); ++i) {
                    if (!check.rows[i].all()) {
                        failures += "; activity " + std::to_string(i + 1) + " violates "
                            + failed_families(check.rows[i]);
                    }
                }
                report.check(check.feasible() && check.span == delta,
                    "x = " + row_text(x) + ", y = " + row_text(y) + ": span " + to_string(check.span)
                        + ", minimum " + to_string(delta) + failures);
            }
        }
        write_output(opts.output, io.out, report.text());
        return static_cast<int>(report.ok() ? Ok : VerificationFailed);
    });
}

int cmd_enumerate(const Options& opts, Streams io)
{
    return guarded(io, [&] {
        const io::ProblemDocument doc = io::parse_problem(read_input(opts.input, io.in));
        const SpanProblem<SF> prob = doc.kind == io::ProblemKind::Span ? io::to_span_problem(doc) : schedule_problem(doc);

        std::ostringstream os;
        if (doc.kind == io::ProblemKind::Schedule) {
            os << "reduced problem D = " << to_string(prob.a()) << "\n";
        }
        os << "minimum " << prob.delta() << "\n";
        os << "sparsified " << to_string(prob.sparse()) << "\n";

        EnumerationStats stats;
        const std::vector<SelectionMatrix> kept
            = enumerate_selections<SF>(prob.sparse(), prob.p(), { opts.budget, false }, &stats);
        std::vector<SelectionMatrix> listed = kept;
        if (opts.exhaustive) {
            listed = enumerate_selections<SF>(prob.sparse(), prob.p(), { opts.budget, true });
        }
        for (std::size_t k = 0; k < listed.size(); ++k) {
            const SelectionMatrix& sel = listed[k];
            const bool emitted = std::find(kept.begin(), kept.end(), sel) != kept.end();
            os << "selection " << k + 1 << " columns " << columns_text(sel);
            if (opts.exhaustive) {
                os << (emitted ? "  kept" : "  pruned");
            }
            os << "\n";
            os << "  matrix     " << to_string(materialize(sel, prob.sparse())) << "\n";
            os << "  generators " << to_string(selection_generators(sel, prob).generators) << "\n";
        }
        os << "visited " << stats.visited << ", pruned " << stats.pruned << ", total " << stats.total << "\n";
        write_output(opts.output, io.out, os.str());
        return static_cast<int>(Ok);
    });
}

int cmd_plot(const PlotOptions& opts, Streams io)
{
    return guarded(io, [&] {
        const io::ProblemDocument doc = io::parse_problem(read_input(opts.input, io.in));
        std::string svg;
        if (doc.kind == io::ProblemKind::Span) {
            const SpanProblem<SF> prob = io::to_span_problem(doc);
            if (prob.a().cols() != 2) {
                throw Error(ErrorCode::UnsupportedDimension,
                    "plots need two variables, got " + std::to_string(prob.a().cols()));
            }
            svg = plot::render_span(prob, complete_solution(prob, enumeration(opts)), opts.window);
        } else {
            const ScheduleInstance<SF> inst = io::to_schedule(doc);
            if (inst.size() != 2) {
                throw Error(ErrorCode::UnsupportedDimension,
                    "plots need two activities, got " + std::to_string(inst.size()));
            }
            ScheduleSolution<SF> sol = solve_schedule(inst, enumeration(opts));
            if (opts.compact) {
                sol = compact_generators(sol);
            }
            svg = plot::render_schedule(sol, opts.window);
        }
        write_output(opts.output, io.out, svg);
        return static_cast<int>(Ok);
    });
}

int run(const std::vector<std::string>& args, Streams io)
{
    CLI::App app { "Tropical span minimization and just-in-time scheduling", "tropopt" };
    app.require_subcommand(1);

    auto common = [](CLI::App* sub, Options& o) {
        sub->add_option("-i,--input", o.input, "problem document, - for stdin")->capture_default_str();
        sub->add_option("-o,--output", o.output, "output path, - for stdout")->capture_default_str();
        sub->add_option("--budget", o.budget, "cap on enumerated selection matrices")->capture_default_str();
        sub->add_flag("--exhaustive", o.exhaustive, "disable forward pruning");
        sub->add_flag("--compact", o.compact, "merge collinear start-time generators (schedules)");
    };

    Options solve_opts;
    VerifyOptions verify_opts;
    Options enumerate_opts;
    PlotOptions plot_opts;

    CLI::App* solve = app.add_subcommand("solve", "write the solution document");
    common(solve, solve_opts);
    CLI::App* verify = app.add_subcommand("verify", "check candidate vectors or a solution document");
    common(verify, verify_opts);
    verify->add_option("--x", verify_opts.x, "candidate vector, e.g. 1,2 (repeatable)");
    verify->add_option("--y", verify_opts.y, "finish times for the matching --x (schedules)");
    verify->add_option("--solution", verify_opts.solution, "solution document to check");
    CLI::App* enumerate = app.add_subcommand("enumerate", "list the selection matrices and their generators");
    common(enumerate, enumerate_opts);
    CLI::App* plot = app.add_subcommand("plot", "draw a two-variable solution set as SVG");
    common(plot, plot_opts);
    plot->add_option("--window", plot_opts.window, "half-width of the drawn square")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, io.out, io.err);
        return code == 0 ? static_cast<int>(Ok) : static_cast<int>(BadInput);
    }

    if (solve->parsed()) {
        return cmd_solve(solve_opts, io);
    }
    if (verify->parsed()) {
        return cmd_verify(verify_opts, io);
    }
    if (enumerate->parsed()) {
        return cmd_enumerate(enumerate_opts, io);
    }
    return cmd_plot(plot_opts, io);
}

} // namespace tropopt::cli
