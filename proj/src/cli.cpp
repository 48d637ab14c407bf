#include "jacpair/cli.hpp"

#include "jacpair/atlas.hpp"
#include "jacpair/divisor.hpp"
#include "jacpair/numtheory.hpp"
#include "jacpair/pairing.hpp"
#include "jacpair/realize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <sstream>

namespace jacpair {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << body;
    if (!out.flush()) throw std::invalid_argument("write failed for " + path);
}

std::string join_factors(const std::vector<Int>& factors) {
    if (factors.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ",";
        s += factors[i].str();
    }
    return s;
}

std::string group_text(const std::vector<Int>& factors) {
    if (factors.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + factors[i].str();
    }
    return s;
}

std::vector<Int> parse_factor_list(const std::string& text) {
    std::vector<Int> out;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t a = token.find_first_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("empty entry in factor list");
        std::size_t b = token.find_last_not_of(" \t");
        token = token.substr(a, b - a + 1);
        if (token.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad factor \"" + token + "\"");
        out.push_back(Int(token));
    }
    if (out.empty() && !text.empty() && text.find_first_not_of(" \t") != std::string::npos)
        throw std::invalid_argument("bad factor list \"" + text + "\"");
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact graph Jacobians, monodromy pairings, and realizations"};
    app.require_subcommand(1);

    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable decoration instead of bare machine output");

    int rc = 0;

    // jacobian
    std::string jac_file;
    CLI::App* jac = app.add_subcommand("jacobian", "invariant factors of the Jacobian of a graph");
    jac->fallthrough();
    jac->add_option("graph", jac_file, "graph file")->required();
    jac->callback([&] {
        Multigraph g = parse_graph(read_file(jac_file));
        JacobianPresentation j = jacobian(g, 0);
        if (pretty)
            out << "Jac = " << group_text(j.invariant_factors) << " (order "
                << spanning_tree_count(g) << ", " << spanning_tree_count(g)
                << " spanning trees)\n";
        else
            out << "factors: " << join_factors(j.invariant_factors) << "\n";
    });

    // pairing
    std::string pair_file, d1_text, d2_text;
    CLI::App* pair = app.add_subcommand("pairing", "monodromy pairing of two degree-0 divisors");
    pair->fallthrough();
    pair->add_option("graph", pair_file, "graph file")->required();
    pair->add_option("--d1", d1_text, "first divisor, \"index:value,...\"")->required();
    pair->add_option("--d2", d2_text, "second divisor")->required();
    pair->callback([&] {
        Multigraph g = parse_graph(read_file(pair_file));
        Rat v = monodromy_pairing(g, parse_divisor(d1_text, g.vertex_count()),
                                  parse_divisor(d2_text, g.vertex_count()));
        if (pretty)
            out << "<D1,D2> = " << num(v) << "/" << den(v) << "\n";
        else
            out << num(v) << "/" << den(v) << "\n";
    });

    // reduce
    std::string red_file, red_divisor;
    std::size_t red_base = 0;
    CLI::App* red = app.add_subcommand("reduce", "base-reduced representative of a divisor class");
    red->fallthrough();
    red->add_option("graph", red_file, "graph file")->required();
    red->add_option("--divisor", red_divisor, "divisor, \"index:value,...\"")->required();
    red->add_option("--base", red_base, "base vertex (default 0)");
    red->callback([&] {
        Multigraph g = parse_graph(read_file(red_file));
        Divisor d = dhar_reduce(g, parse_divisor(red_divisor, g.vertex_count()), red_base);
        out << emit_divisor(d) << "\n";
    });

    // classify
    std::string cls_file;
    CLI::App* cls = app.add_subcommand("classify", "canonical pairing decomposition of Jac(G)");
    cls->fallthrough();
    cls->add_option("graph", cls_file, "graph file")->required();
    cls->callback([&] {
        Multigraph g = parse_graph(read_file(cls_file));
        PairingDecomposition d = classify(gram_matrix(jacobian(g, 0)));
        if (pretty)
            out << "class: " << (d.blocks.empty() ? "trivial" : d.text()) << " (order "
                << d.order() << ")\n";
        else
            out << d.text() << "\n";
    });

    // realize
    std::string rea_spec, rea_out;
    std::uint64_t rea_mult = 1;
    CLI::App* rea = app.add_subcommand("realize", "construct a graph with the given Jacobian pairing");
    rea->fallthrough();
    rea->add_option("spec", rea_spec, "decomposition, e.g. \"2^3:C + 5^1:nonres\"")->required();
    rea->add_option("-o,--output", rea_out, "write the graph to a file instead of stdout");
    rea->add_option("--q-bound-multiplier", rea_mult, "scale the nonresidue-prime search bound");
    rea->callback([&] {
        RealizationSpec spec = parse_spec(rea_spec);
        spec.q_bound_multiplier = rea_mult;
        RealizedGraph g = realize(spec);
        std::string body = emit_graph(g.graph);
        body += "# spec: " + spec.decomposition.text() + "\n";
        for (const std::string& note : g.block_notes) body += "# " + note + "\n";
        if (rea_out.empty())
            out << body;
        else
            write_file(rea_out, body);
    });

    // verify-q
    std::uint64_t vq_bound = 0;
    bool vq_all = false, vq_certs = false;
    unsigned vq_jobs = 1;
    CLI::App* vq = app.add_subcommand(
        "verify-q", "check the nonresidue-prime bound q < 2 sqrt(p) over a prime range");
    vq->fallthrough();
    vq->add_option("bound", vq_bound, "check every prime p <= bound")->required();
    vq->add_flag("--all", vq_all, "check all odd primes, not only p = 1 (mod 24)");
    vq->add_flag("--emit-certificates", vq_certs, "print a p/q/a/ratio line per certified prime");
    vq->add_option("--jobs", vq_jobs, "worker threads (default 1)");
    vq->callback([&] {
        QRangeReport report = verify_q_range(vq_bound, !vq_all, vq_certs, vq_jobs);
        if (vq_certs) {
            out << "p\tq\ta\tratio\n";
            for (const NonresidueCertificate& c : report.certificates)
                out << c.p << '\t' << c.q << '\t' << c.a << '\t'
                    << ratio_decimal(Rat(c.q * c.q, c.p)) << '\n';
        }
        out << report.summary() << "\n";
        if (!report.failures.empty()) {
            err << "no admissible nonresidue prime below the bound for:";
            for (std::uint64_t p : report.failures) err << ' ' << p;
            err << "\n";
            rc = 1;
        }
    });

    // census
    std::uint64_t cen_bound = 0;
    std::string cen_out;
    unsigned cen_jobs = 1;
    CLI::App* cen = app.add_subcommand(
        "census", "2-edge-connected simple graphs with bounded spanning-tree count");
    cen->fallthrough();
    cen->add_option("max_trees", cen_bound, "spanning-tree bound")->required();
    cen->add_option("-o,--output", cen_out, "write the TSV atomically to a file");
    cen->add_option("--jobs", cen_jobs, "worker threads (default 1)");
    cen->callback([&] {
        std::vector<CensusRecord> records = census(Int(cen_bound), cen_jobs);
        if (cen_out.empty())
            out << census_tsv(records);
        else
            write_census_tsv(records, cen_out);
    });

    // check-absence
    std::string abs_factors;
    std::uint64_t abs_bound = 0;
    unsigned abs_jobs = 1;
    CLI::App* absc = app.add_subcommand(
        "check-absence", "is any simple graph Jacobian isomorphic to the given group?");
    absc->fallthrough();
    absc->add_option("factors", abs_factors, "invariant factors, e.g. \"2,4\"")->required();
    absc->add_option("--max-trees", abs_bound, "census bound (must cover the group order)")
        ->required();
    absc->add_option("--jobs", abs_jobs, "worker threads (default 1)");
    absc->callback([&] {
        std::vector<Int> factors = parse_factor_list(abs_factors);
        AbsenceVerdict v = check_absence(factors, Int(abs_bound), census(Int(abs_bound), abs_jobs));
        if (!v.present) {
            out << "ABSENT\n";
            return;
        }
        out << "PRESENT\n";
        std::string parts;
        for (std::size_t i = 0; i < v.parts.size(); ++i)
            parts += (i ? " | " : "") + v.parts[i];
        out << "# parts: " << parts << "\n";
        out << emit_graph(v.witness);
    });

    std::vector<const char*> argv;
    argv.push_back("jacpair");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace jacpair
