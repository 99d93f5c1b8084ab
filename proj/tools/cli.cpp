#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rcurves/enumerate.hpp"
#include "rcurves/forms.hpp"
#include "rcurves/lattice.hpp"
#include "rcurves/notation.hpp"
#include "rcurves/orientation.hpp"

namespace rcurves::cli {
namespace {

using nlohmann::ordered_json;

// Bad flag combinations and unreadable inputs; reported on err with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Surface surface_from(const std::string& name) {
    if (name == "plane") return Surface::Plane;
    if (name == "hyperboloid") return Surface::Hyperboloid;
    return Surface::Ellipsoid;
}

TypeClaim claim_from(const std::string& name) {
    if (name == "I") return TypeClaim::TypeI;
    if (name == "II") return TypeClaim::TypeII;
    return TypeClaim::Unknown;
}

// The --surface/--degree/--bidegree triple every scheme command shares.
struct ClassOpts {
    std::string surface = "plane";
    int degree = 0;
    std::vector<int> bidegree;
};

struct ResolvedClass {
    Surface surface = Surface::Plane;
    CurveClass cls;
};

ResolvedClass resolve_class(const ClassOpts& o) {
    Surface s = surface_from(o.surface);
    if (o.degree > 0 && !o.bidegree.empty())
        throw UsageError("give --degree or --bidegree, not both");
    if (o.degree > 0) {
        if (s != Surface::Plane)
            throw UsageError("--degree is for the plane; quadrics take --bidegree");
        return {s, {o.degree, 0}};
    }
    if (!o.bidegree.empty()) {
        if (o.bidegree.size() != 2) throw UsageError("--bidegree wants two numbers: M1,M2");
        if (s == Surface::Plane)
            throw UsageError("--bidegree needs --surface hyperboloid or ellipsoid");
        return {s, {o.bidegree[0], o.bidegree[1]}};
    }
    throw UsageError("a curve class is required: --degree N or --bidegree M1,M2");
}

std::string class_text(Surface s, CurveClass c) {
    if (s == Surface::Plane) return "degree " + std::to_string(c.m1);
    return "bidegree (" + std::to_string(c.m1) + "," + std::to_string(c.m2) + ")";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Multiprecision values go out as numbers while they fit, decimal strings after.
ordered_json json_int(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["rule_id"] = v.rule_id;
    j["applicable"] = v.applicable;
    j["pass"] = v.pass ? ordered_json(*v.pass) : ordered_json(nullptr);
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["notes"] = v.notes;
    return j;
}

ordered_json report_json(const Report& r) {
    ordered_json j;
    j["scheme"] = render(r.scheme);
    j["class"] = {r.scheme.cls.m1, r.scheme.cls.m2};
    j["surface"] = to_string(r.scheme.surface);
    j["claim"] = to_string(r.claim);
    j["defect"] = r.defect;
    j["admissible"] = r.admissible;
    ordered_json verdicts = ordered_json::array();
    for (const Verdict& v : r.verdicts) verdicts.push_back(verdict_json(v));
    j["verdicts"] = verdicts;
    return j;
}

void print_report(std::ostream& out, const Report& r,
                  const std::optional<OrientedScheme>& ori) {
    out << render(r.scheme) << "  " << to_string(r.scheme.surface) << ' '
        << class_text(r.scheme.surface, r.scheme.cls) << ", claim " << to_string(r.claim)
        << ", defect " << r.defect << '\n';
    if (ori) out << "orientation " << render(*ori) << '\n';
    for (const Verdict& v : r.verdicts) {
        out << "  " << std::left << std::setw(20) << v.rule_id << ' ';
        if (!v.applicable) {
            out << "n/a ";
            if (!v.notes.empty()) out << "  " << v.notes;
        } else {
            out << (*v.pass ? "ok  " : "FAIL") << "  lhs=" << v.lhs << " rhs=" << v.rhs;
            if (!v.notes.empty()) out << "  " << v.notes;
        }
        out << '\n';
    }
    if (r.admissible) {
        out << "admissible\n";
    } else {
        out << "prohibited:";
        for (const Verdict& v : r.verdicts)
            if (v.applicable && !v.pass.value_or(true)) out << ' ' << v.rule_id;
        out << '\n';
    }
}

std::string components_text(const RealScheme& s) {
    ComponentCounts c = component_counts(s);
    std::string t = std::to_string(c.total) + (c.total == 1 ? " component" : " components");
    if (s.has_j) {
        t += " (" + std::to_string(c.l) + " ovals + J)";
    } else if (c.h > 0) {
        t += " (" + std::to_string(c.l) + " ovals + " + std::to_string(c.h) +
             " noncontractible of class (" + std::to_string(s.c1) + "," +
             std::to_string(s.c2) + "))";
    }
    return t;
}

// ---- check ---------------------------------------------------------------

struct CheckOpts {
    ClassOpts cls;
    std::string scheme_text;
    std::string batch_file;
    std::string orientation_text;
    std::string type = "unknown";
    std::vector<int> aux_degrees;
    bool json = false;
    bool strict = false;
};

struct Checked {
    Report report;
    std::optional<OrientedScheme> orientation;
};

Checked check_one(const std::string& text, const ResolvedClass& rc, const CheckOpts& o) {
    ParsedScheme ps = parse_scheme(text, rc.surface, rc.cls);
    std::optional<OrientedScheme> ori = ps.orientation;
    if (!o.orientation_text.empty()) {
        if (ori)
            throw UsageError("the scheme text already carries signs; drop --orientation");
        ParsedScheme po = parse_scheme(o.orientation_text, rc.surface, rc.cls);
        if (!po.orientation) throw UsageError("--orientation text carries no signs");
        if (!(po.scheme == ps.scheme))
            throw UsageError("--orientation describes a different scheme");
        ori = po.orientation;
    }
    Report rep = check_all(ps.scheme, claim_from(o.type), ori, {}, o.aux_degrees);
    return {std::move(rep), std::move(ori)};
}

int run_check(const CheckOpts& o, std::ostream& out, std::ostream& err) {
    ResolvedClass rc = resolve_class(o.cls);
    if (o.batch_file.empty()) {
        Checked c = check_one(o.scheme_text, rc, o);
        if (o.json) {
            ordered_json j = report_json(c.report);
            j["orientation"] =
                c.orientation ? ordered_json(render(*c.orientation)) : ordered_json(nullptr);
            out << j.dump(2) << '\n';
        } else {
            print_report(out, c.report, c.orientation);
        }
        return exit_code_for(c.report, o.strict);
    }

    // Batch: one scheme per line, '#' and blank lines skipped. A bad line is
    // reported and costs code 2, but never stops the rest of the file.
    std::ifstream in(o.batch_file);
    if (!in) throw UsageError("cannot open " + o.batch_file);
    if (!o.orientation_text.empty())
        throw UsageError("--orientation does not combine with --batch; sign the lines");
    int worst = 0;
    bool first = true;
    ordered_json rows = ordered_json::array();
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            Checked c = check_one(line, rc, o);
            worst = std::max(worst, exit_code_for(c.report, o.strict));
            if (o.json) {
                ordered_json row;
                row["line"] = lineno;
                row.update(report_json(c.report));
                rows.push_back(row);
            } else {
                if (!first) out << '\n';
                print_report(out, c.report, c.orientation);
                first = false;
            }
        } catch (const std::exception& e) {
            err << "line " << lineno << ": " << e.what() << '\n';
            worst = std::max(worst, 2);
        }
    }
    if (o.json) out << rows.dump(2) << '\n';
    return worst;
}

// ---- parse ---------------------------------------------------------------

struct ParseOpts {
    ClassOpts cls;
    std::string scheme_text;
    bool json = false;
};

int run_parse(const ParseOpts& o, std::ostream& out) {
    ResolvedClass rc = resolve_class(o.cls);
    ParsedScheme ps = parse_scheme(o.scheme_text, rc.surface, rc.cls);
    const RealScheme& s = ps.scheme;
    if (o.json) {
        ordered_json j;
        j["scheme"] = render(s);
        j["class"] = {s.cls.m1, s.cls.m2};
        j["surface"] = to_string(s.surface);
        j["orientation"] =
            ps.orientation ? ordered_json(render(*ps.orientation)) : ordered_json(nullptr);
        ComponentCounts c = component_counts(s);
        j["components"] = {{"ovals", c.l}, {"noncontractible", c.h}, {"total", c.total}};
        j["genus"] = genus(s);
        j["defect"] = m_defect(s);
        j["admissible"] = true;  // no rules were run
        j["verdicts"] = ordered_json::array();
        out << j.dump(2) << '\n';
    } else {
        out << (ps.orientation ? render(*ps.orientation) : render(s)) << '\n';
        out << to_string(s.surface) << ' ' << class_text(s.surface, s.cls) << "; "
            << components_text(s) << "; genus " << genus(s) << ", defect " << m_defect(s)
            << '\n';
    }
    return 0;
}

// ---- orient --------------------------------------------------------------

struct OrientOpts {
    ClassOpts cls;
    std::string scheme_text;
    int limit = 24;
    bool json = false;
};

int run_orient(const OrientOpts& o, std::ostream& out) {
    ResolvedClass rc = resolve_class(o.cls);
    ParsedScheme ps = parse_scheme(o.scheme_text, rc.surface, rc.cls);
    std::vector<OrientedScheme> classes = admissible_orientations(ps.scheme, o.limit);
    if (o.json) {
        ordered_json j;
        j["scheme"] = render(ps.scheme);
        j["class"] = {rc.cls.m1, rc.cls.m2};
        j["surface"] = to_string(rc.surface);
        j["admissible"] = !classes.empty();
        j["verdicts"] = ordered_json::array();
        j["count"] = classes.size();
        ordered_json texts = ordered_json::array();
        for (const OrientedScheme& c : classes) texts.push_back(render(c));
        j["orientations"] = texts;
        out << j.dump(2) << '\n';
    } else {
        out << render(ps.scheme) << "  " << to_string(rc.surface) << ' '
            << class_text(rc.surface, rc.cls) << '\n';
        out << "orientation classes: " << classes.size() << '\n';
        for (const OrientedScheme& c : classes) out << "  " << render(c) << '\n';
    }
    return classes.empty() ? 1 : 0;
}

// ---- enumerate -----------------------------------------------------------

struct EnumerateOpts {
    ClassOpts cls;
    std::string type = "unknown";
    int limit = -1;
    bool json = false;
};

int run_enumerate(const EnumerateOpts& o, std::ostream& out) {
    ResolvedClass rc = resolve_class(o.cls);
    std::vector<Enumeration> all = enumerate_schemes(rc.surface, rc.cls, o.limit);
    TypeClaim claim = claim_from(o.type);
    auto listed = [&](const Enumeration& e) {
        if (claim == TypeClaim::TypeI) return e.type_i;
        if (claim == TypeClaim::TypeII) return e.type_ii;
        return e.report.admissible;
    };
    auto marks = [](const Enumeration& e) -> std::string {
        if (e.type_i && e.type_ii) return "I,II";
        if (e.type_i) return "I";
        if (e.type_ii) return "II";
        return "-";
    };
    long long cap =
        o.limit >= 0 ? o.limit : AuxTables::harnack_number(rc.surface, rc.cls);
    size_t shown = 0;
    for (const Enumeration& e : all) shown += listed(e) ? 1 : 0;
    if (o.json) {
        ordered_json j;
        j["surface"] = to_string(rc.surface);
        j["class"] = {rc.cls.m1, rc.cls.m2};
        j["limit"] = cap;
        j["candidates"] = all.size();
        j["listed"] = shown;
        ordered_json rows = ordered_json::array();
        for (const Enumeration& e : all) {
            if (!listed(e)) continue;
            ordered_json row = report_json(e.report);
            row["type_i"] = e.type_i;
            row["type_ii"] = e.type_ii;
            rows.push_back(row);
        }
        j["rows"] = rows;
        out << j.dump(2) << '\n';
    } else {
        out << "# " << to_string(rc.surface) << ' ' << class_text(rc.surface, rc.cls) << ": "
            << all.size() << " candidates, component cap " << cap << ", " << shown
            << " listed\n";
        for (const Enumeration& e : all)
            if (listed(e)) out << e.text << '\t' << marks(e) << '\n';
    }
    return 0;
}

// ---- diff ----------------------------------------------------------------

struct DiffOpts {
    ClassOpts cls;
    std::string table_file;
    std::string golden_dir = "data/golden";
    bool json = false;
};

int run_diff(const DiffOpts& o, std::ostream& out) {
    std::string path = o.table_file;
    if (path.empty()) {
        ResolvedClass rc = resolve_class(o.cls);
        path = o.golden_dir + "/" + to_string(rc.surface) + "-" + std::to_string(rc.cls.m1) +
               "-" + std::to_string(rc.cls.m2) + ".txt";
    }
    GoldenTable table = load_golden_table(path);
    GoldenDiff diff = diff_golden(table);
    if (o.json) {
        ordered_json j;
        j["surface"] = to_string(table.surface);
        j["class"] = {table.cls.m1, table.cls.m2};
        j["file"] = path;
        j["entries"] = table.entries.size();
        j["missing"] = diff.missing;
        j["extra"] = diff.extra;
        out << j.dump(2) << '\n';
    } else {
        out << to_string(table.surface) << ' ' << class_text(table.surface, table.cls) << ": "
            << table.entries.size() << " entries  [" << path << "]\n";
        out << "missing: " << diff.missing.size();
        if (!diff.missing.empty()) out << "  (listed but prohibited -- a rule is wrong)";
        out << '\n';
        for (const std::string& t : diff.missing) out << "  " << t << '\n';
        out << "extra: " << diff.extra.size();
        if (!diff.extra.empty()) out << "  (admitted but not listed)";
        out << '\n';
        for (const std::string& t : diff.extra) out << "  " << t << '\n';
    }
    return diff.missing.empty() ? 0 : 1;
}

// ---- form ----------------------------------------------------------------

int run_form_brown(const std::string& word, bool json, std::ostream& out) {
    QuadraticSpace q = form_from_word(word);
    int b = brown(q);
    if (json) {
        ordered_json j;
        j["word"] = word;
        j["rank"] = q.dim();
        j["brown"] = b;
        out << j.dump(2) << '\n';
    } else {
        out << b << '\n';
    }
    return 0;
}

int run_form_classify(const std::string& word, bool json, std::ostream& out) {
    FormClass fc = classify(form_from_word(word));
    if (json) {
        ordered_json j;
        j["word"] = word;
        j["rank"] = fc.rank;
        j["even"] = fc.even;
        j["brown"] = fc.brown;
        j["canonical"] = fc.word;
        out << j.dump(2) << '\n';
    } else {
        out << "rank " << fc.rank << ", " << (fc.even ? "even" : "odd") << ", brown "
            << fc.brown << ": " << fc.word << '\n';
    }
    return 0;
}

int run_form_gauss(const std::string& word, bool json, std::ostream& out) {
    Cyc8 g = gauss_sum(form_from_word(word));
    if (json) {
        ordered_json j;
        j["word"] = word;
        j["gauss"] = {g.c[0], g.c[1], g.c[2], g.c[3]};
        out << j.dump(2) << '\n';
    } else {
        out << g.str() << '\n';
    }
    return 0;
}

// ---- lattice -------------------------------------------------------------

LatticeFile lattice_source(const std::string& src) {
    std::string low = src;
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (low == "e8") return {IntegralLattice::e8(), std::nullopt};
    if (low == "u") return {IntegralLattice::hyperbolic(), std::nullopt};
    if (low == "d4") return {IntegralLattice::d4(), std::nullopt};
    return parse_lattice_file(slurp(src));
}

// Rank 0 turns up as an eigenlattice of the identity; its invariants are
// fixed by convention, not worth a special case in the elimination.
LatticeInvariants invariants_or_trivial(const IntegralLattice& L) {
    if (L.rank == 0) return {0, 1, true};
    return lattice_invariants(L);
}

void print_invariants(std::ostream& out, const IntegralLattice& L, const char* label) {
    LatticeInvariants inv = invariants_or_trivial(L);
    out << label << "rank " << L.rank << ", " << (inv.even ? "even" : "odd")
        << ", signature " << inv.signature << ", determinant " << inv.determinant.str()
        << '\n';
}

ordered_json invariants_json(const IntegralLattice& L) {
    LatticeInvariants inv = invariants_or_trivial(L);
    ordered_json j;
    j["rank"] = L.rank;
    j["even"] = inv.even;
    j["signature"] = inv.signature;
    j["determinant"] = json_int(inv.determinant);
    return j;
}

int run_lattice_invariants(const LatticeFile& lf, bool json, std::ostream& out) {
    if (json)
        out << invariants_json(lf.lattice).dump(2) << '\n';
    else
        print_invariants(out, lf.lattice, "");
    return 0;
}

int run_lattice_discriminant(const LatticeFile& lf, bool json, std::ostream& out) {
    Discriminant d = discriminant(lf.lattice);
    std::optional<FormClass> fc;
    if (d.form) fc = classify(*d.form);
    if (json) {
        ordered_json j;
        ordered_json factors = ordered_json::array();
        for (const Int& f : d.factors) factors.push_back(json_int(f));
        j["factors"] = factors;
        if (fc) {
            ordered_json fj;
            fj["rank"] = fc->rank;
            fj["even"] = fc->even;
            fj["brown"] = fc->brown;
            fj["canonical"] = fc->word;
            j["form"] = fj;
        } else {
            j["form"] = nullptr;
            j["unsupported"] = d.unsupported;
        }
        out << j.dump(2) << '\n';
    } else {
        out << "invariant factors:";
        if (d.factors.empty()) out << " none (unimodular)";
        for (const Int& f : d.factors) out << ' ' << f.str();
        out << '\n';
        if (fc)
            out << "discriminant form: rank " << fc->rank << ", "
                << (fc->even ? "even" : "odd") << ", brown " << fc->brown << ": " << fc->word
                << '\n';
        else
            out << "discriminant form: none (" << d.unsupported << ")\n";
    }
    return 0;
}

int run_lattice_vdb(const LatticeFile& lf, bool json, std::ostream& out) {
    VdbResult v = van_der_blij_check(lf.lattice);
    if (json) {
        ordered_json j;
        j["brown"] = v.brown;
        j["sigma_mod8"] = v.sigma_mod8;
        j["pass"] = v.pass;
        j["case"] = v.case_id;
        j["case_pass"] = v.case_pass;
        out << j.dump(2) << '\n';
    } else {
        out << "brown " << v.brown << " vs signature " << v.sigma_mod8
            << " (mod 8): " << (v.pass ? "pass" : "FAIL") << '\n';
        out << "case " << v.case_id << ": " << (v.case_pass ? "pass" : "FAIL") << '\n';
    }
    return v.pass && v.case_pass ? 0 : 1;
}

int run_lattice_eigen(const LatticeFile& lf, bool json, std::ostream& out) {
    if (!lf.involution) throw UsageError("the lattice source carries no involution rows");
    Eigenlattices eig = eigenlattices({lf.lattice, *lf.involution});
    if (json) {
        ordered_json j;
        j["plus"] = invariants_json(eig.plus);
        j["minus"] = invariants_json(eig.minus);
        j["dim_j"] = eig.dim_j;
        out << j.dump(2) << '\n';
    } else {
        print_invariants(out, eig.plus, "eigenlattice +1: ");
        print_invariants(out, eig.minus, "eigenlattice -1: ");
        out << "shared discriminant order: 2^" << eig.dim_j << '\n';
    }
    return 0;
}

}  // namespace

int exit_code_for(const Report& report, bool strict) {
    if (!report.admissible) return 1;
    if (strict) {
        for (const Verdict& v : report.verdicts)
            if (v.applicable) return 0;
        return 3;
    }
    return 0;
}

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;

    CLI::App app{"topology of real algebraic curves: scheme notation, prohibition checks,\n"
                 "orientation search and enumeration"};
    app.name("rcurves");
    app.require_subcommand(1);

    auto add_class_flags = [](CLI::App* cmd, ClassOpts& o) {
        cmd->add_option("--surface", o.surface, "plane, hyperboloid or ellipsoid")
            ->check(CLI::IsMember({"plane", "hyperboloid", "ellipsoid"}));
        cmd->add_option("--degree", o.degree, "plane curve degree M");
        cmd->add_option("--bidegree", o.bidegree, "quadric curve bidegree M1,M2")
            ->delimiter(',');
    };
    const std::vector<std::string> type_names = {"I", "II", "unknown"};

    ParseOpts parse_opts;
    CLI::App* parse_cmd =
        app.add_subcommand("parse", "parse bracket notation, print the canonical form");
    add_class_flags(parse_cmd, parse_opts.cls);
    parse_cmd->add_option("scheme", parse_opts.scheme_text, "scheme in bracket notation")
        ->required();
    parse_cmd->add_flag("--json", parse_opts.json, "machine output");

    CheckOpts check_opts;
    CLI::App* check_cmd =
        app.add_subcommand("check", "run every prohibition against a scheme");
    add_class_flags(check_cmd, check_opts.cls);
    check_cmd->add_option("scheme", check_opts.scheme_text, "scheme in bracket notation");
    check_cmd->add_option("--type", check_opts.type, "claimed type")
        ->check(CLI::IsMember(type_names));
    check_cmd->add_option("--orientation", check_opts.orientation_text,
                          "signed bracket text supplying the orientation");
    check_cmd->add_option("--aux-degrees", check_opts.aux_degrees,
                          "auxiliary-curve degrees for the nest bounds")
        ->delimiter(',');
    check_cmd->add_option("--batch", check_opts.batch_file,
                          "file with one scheme per line; exit code is the per-line maximum");
    check_cmd->add_flag("--json", check_opts.json, "machine output");
    check_cmd->add_flag("--strict", check_opts.strict,
                        "exit 3 when no rule was applicable");

    OrientOpts orient_opts;
    CLI::App* orient_cmd = app.add_subcommand(
        "orient", "list the orientation classes passing the dividing-curve identities");
    add_class_flags(orient_cmd, orient_opts.cls);
    orient_cmd->add_option("scheme", orient_opts.scheme_text, "scheme in bracket notation")
        ->required();
    orient_cmd->add_option("--limit", orient_opts.limit, "orientation bit budget");
    orient_cmd->add_flag("--json", orient_opts.json, "machine output");

    EnumerateOpts enum_opts;
    CLI::App* enum_cmd =
        app.add_subcommand("enumerate", "list the admissible schemes of a class");
    add_class_flags(enum_cmd, enum_opts.cls);
    enum_cmd->add_option("--type", enum_opts.type,
                         "list schemes admissible with this claimed type")
        ->check(CLI::IsMember(type_names));
    enum_cmd->add_option("--limit", enum_opts.limit,
                         "component cap (default: the Harnack number)");
    enum_cmd->add_flag("--json", enum_opts.json, "machine output");

    DiffOpts diff_opts;
    CLI::App* diff_cmd =
        app.add_subcommand("diff", "compare the rule set against a reference table");
    add_class_flags(diff_cmd, diff_opts.cls);
    diff_cmd->add_option("table", diff_opts.table_file, "table file (overrides the class flags)");
    diff_cmd->add_option("--golden-dir", diff_opts.golden_dir,
                         "directory holding the reference tables");
    diff_cmd->add_flag("--json", diff_opts.json, "machine output");

    std::string form_word;
    bool form_json = false;
    CLI::App* form_cmd = app.add_subcommand(
        "form", "finite quadratic forms: Brown invariant, classification, Gauss sum");
    form_cmd->require_subcommand(1);
    CLI::App* form_brown_cmd = form_cmd->add_subcommand("brown", "Brown invariant in Z/8");
    CLI::App* form_classify_cmd =
        form_cmd->add_subcommand("classify", "rank, parity, Brown invariant, canonical word");
    CLI::App* form_gauss_cmd =
        form_cmd->add_subcommand("gauss", "exact Gauss sum in Z[zeta], zeta^8 = 1");
    for (CLI::App* sub : {form_brown_cmd, form_classify_cmd, form_gauss_cmd}) {
        sub->add_option("word", form_word, "direct-sum word over A+, A-, U, V")->required();
        sub->add_flag("--json", form_json, "machine output");
    }

    std::string lattice_src;
    bool lattice_json = false;
    CLI::App* lattice_cmd = app.add_subcommand(
        "lattice", "integral lattices: invariants, discriminant form, involutions");
    lattice_cmd->require_subcommand(1);
    CLI::App* lat_inv_cmd =
        lattice_cmd->add_subcommand("invariants", "rank, parity, signature, determinant");
    CLI::App* lat_disc_cmd = lattice_cmd->add_subcommand(
        "discriminant", "invariant factors and the discriminant quadratic form");
    CLI::App* lat_vdb_cmd = lattice_cmd->add_subcommand(
        "vdb", "Brown invariant of the discriminant form against the signature mod 8");
    CLI::App* lat_eigen_cmd = lattice_cmd->add_subcommand(
        "eigen", "eigenlattices of an involutive isometry of a unimodular lattice");
    for (CLI::App* sub : {lat_inv_cmd, lat_disc_cmd, lat_vdb_cmd, lat_eigen_cmd}) {
        sub->add_option("source", lattice_src,
                        "gram-matrix file, or one of the built-ins e8, u, d4")
            ->required();
        sub->add_flag("--json", lattice_json, "machine output");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return {code == 0 ? 0 : 2, out.str(), err.str()};
    }

    int code = 0;
    try {
        if (app.got_subcommand(parse_cmd)) {
            code = run_parse(parse_opts, out);
        } else if (app.got_subcommand(check_cmd)) {
            if (check_opts.scheme_text.empty() == check_opts.batch_file.empty())
                throw UsageError("give one scheme, or --batch FILE");
            code = run_check(check_opts, out, err);
        } else if (app.got_subcommand(orient_cmd)) {
            code = run_orient(orient_opts, out);
        } else if (app.got_subcommand(enum_cmd)) {
            code = run_enumerate(enum_opts, out);
        } else if (app.got_subcommand(diff_cmd)) {
            code = run_diff(diff_opts, out);
        } else if (app.got_subcommand(form_cmd)) {
            if (form_cmd->got_subcommand(form_brown_cmd))
                code = run_form_brown(form_word, form_json, out);
            else if (form_cmd->got_subcommand(form_classify_cmd))
                code = run_form_classify(form_word, form_json, out);
            else
                code = run_form_gauss(form_word, form_json, out);
        } else if (app.got_subcommand(lattice_cmd)) {
            LatticeFile lf = lattice_source(lattice_src);
            if (lattice_cmd->got_subcommand(lat_inv_cmd))
                code = run_lattice_invariants(lf, lattice_json, out);
            else if (lattice_cmd->got_subcommand(lat_disc_cmd))
                code = run_lattice_discriminant(lf, lattice_json, out);
            else if (lattice_cmd->got_subcommand(lat_vdb_cmd))
                code = run_lattice_vdb(lf, lattice_json, out);
            else
                code = run_lattice_eigen(lf, lattice_json, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        code = 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        code = 2;
    }
    return {code, out.str(), err.str()};
}

}  // namespace rcurves::cli
