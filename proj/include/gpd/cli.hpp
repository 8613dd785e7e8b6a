#pragma once

// Command-line front end. `run_cli` takes the arguments after the program
// name so tests can drive it in-process.
//
// Exit codes: 0 success/valid, 1 invalid decomposition, 2 parse error,
// 3 bad arguments, 4 search budget exhausted.

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpd/blocks.hpp"
#include "gpd/bounds.hpp"
#include "gpd/constructions.hpp"
#include "gpd/core.hpp"
#include "gpd/exact.hpp"
#include "gpd/io.hpp"
#include "gpd/verifier.hpp"

namespace gpd::cli {

enum ExitCode : int { ok = 0, invalid = 1, parse_error = 2, bad_arguments = 3, budget_exhausted = 4 };

namespace detail {

class Printer {
public:
    Printer(std::ostream& out, bool porcelain) : out_(out), porcelain_(porcelain) {}

    template <typename T>
    void field(const std::string& key, const T& value) {
        std::ostringstream v;
        v << value;
        if (porcelain_)
            out_ << key << '=' << v.str() << '\n';
        else
            out_ << std::left << std::setw(26) << key << v.str() << '\n';
    }

    void line(const std::string& text) {
        if (!porcelain_) out_ << text << '\n';
    }

    bool porcelain() const noexcept { return porcelain_; }

private:
    std::ostream& out_;
    bool porcelain_;
};

inline std::string decimal(const Rational& q, int digits = 30) {
    HighPrecision v = HighPrecision(numerator(q)) / HighPrecision(denominator(q));
    return v.str(digits, std::ios_base::fmtflags(0));
}

inline std::string decimal(const HighPrecision& v, int digits = 30) {
    return v.str(digits, std::ios_base::fmtflags(0));
}

inline std::string edge_text(const Edge& e) { return "{" + to_string(e) + "}"; }

inline void print_verification(Printer& p, const VerificationReport& rep) {
    p.line(rep.valid ? "VALID" : "INVALID");
    p.field("valid", rep.valid ? 1 : 0);
    p.field("pieces", rep.piece_count);
    p.field("edges", rep.edge_count);
    p.field("census", rep.census);
    if (rep.structural_error) {
        p.field("structural_error", *rep.structural_error);
        if (rep.structural_piece) p.field("structural_piece", *rep.structural_piece);
    }
    if (rep.witness) {
        p.field("witness_edge", edge_text(rep.witness->edge));
        p.field("witness_multiplicity", rep.witness->multiplicity);
        std::string idx;
        for (auto i : rep.witness->covering_pieces) idx += (idx.empty() ? "" : ",") + std::to_string(i);
        p.field("witness_pieces", idx.empty() ? "-" : idx);
    }
}

struct ConstructArgs {
    std::string method;
    std::size_t n = 0;
    std::size_t r = 0;
    std::optional<std::size_t> k;
    std::string out;
    std::string blocks_file;
};

inline int construct(const ConstructArgs& a, Printer& p, std::ostream& err) {
    Decomposition d;
    std::optional<FamilyTally> tally;
    std::optional<std::size_t> source_pieces;
    try {
        if (a.method == "stars") {
            d = construct_stars(a.n);
        } else if (a.method == "baseline") {
            d = construct_baseline(a.n, a.r);
        } else if (a.method == "theorem1") {
            if (!a.k) {
                err << "theorem1 requires --k\n";
                return bad_arguments;
            }
            if (a.r % 2 == 0) {
                err << "theorem1 requires odd --r\n";
                return bad_arguments;
            }
            BlockProvider blocks = trivial_block_provider;
            if (!a.blocks_file.empty()) {
                auto bd = parse_block_decomposition(read_file(a.blocks_file));
                if (!verify_blocks(bd).valid) {
                    err << "block file is not a valid block decomposition\n";
                    return invalid;
                }
                blocks = [bd](std::size_t n) {
                    if (n != bd.n) throw std::invalid_argument("block file class size does not match --n");
                    return bd;
                };
            }
            auto res = construct_theorem1(a.n, *a.k, a.r, baseline_provider, blocks);
            d = std::move(res.decomposition);
            tally = res.tally;
        } else if (a.method == "even-from-odd") {
            if (a.r % 2 != 0) {
                err << "even-from-odd requires even --r\n";
                return bad_arguments;
            }
            d = construct_even_from_odd(a.n, a.r);
            source_pieces = construct_baseline(a.n + 1, a.r + 1).size();
        } else {
            err << "unknown method '" << a.method << "'\n";
            return bad_arguments;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return bad_arguments;
    }

    if (!a.out.empty()) {
        try {
            write_file(a.out, serialize(d));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return bad_arguments;
        }
    }
    p.field("method", a.method);
    p.field("n", d.ground.n);
    p.field("r", d.ground.r);
    p.field("pieces", d.size());
    if (tally) {
        p.field("tally_twos_and_single", tally->twos_and_single);
        p.field("tally_twos_and_triple", tally->twos_and_triple);
        p.field("tally_generic", tally->generic);
    }
    if (source_pieces) p.field("source_pieces", *source_pieces);
    return ok;
}

inline int verify(const std::string& path, Printer& p, std::ostream& err) {
    Decomposition d;
    try {
        d = parse_decomposition(read_file(path));
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return bad_arguments;
    }
    const auto rep = verify_decomposition(d);
    print_verification(p, rep);
    return rep.valid ? ok : invalid;
}

inline int verify_blocks_file(const std::string& path, Printer& p, std::ostream& err) {
    BlockDecomposition bd;
    try {
        bd = parse_block_decomposition(read_file(path));
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return bad_arguments;
    }
    const auto rep = verify_blocks(bd);
    p.line(rep.valid ? "VALID" : "INVALID");
    p.field("valid", rep.valid ? 1 : 0);
    p.field("blocks", rep.block_count);
    p.field("pairs", rep.pair_count);
    if (rep.structural_error) p.field("structural_error", *rep.structural_error);
    if (rep.witness_first) {
        p.field("witness_pair", edge_text(*rep.witness_first) + "x" + edge_text(*rep.witness_second));
        p.field("witness_multiplicity", rep.witness_multiplicity);
    }
    return rep.valid ? ok : invalid;
}

struct ExactArgs {
    std::size_t n = 0;
    std::size_t r = 0;
    std::uint64_t max_nodes = 50'000'000;
    std::optional<double> max_seconds;
    std::string out;
};

inline int exact(const ExactArgs& a, Printer& p, std::ostream& err) {
    ExactResult res;
    try {
        res = solve_exact(a.n, a.r, SearchBudget(a.max_nodes, a.max_seconds));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return bad_arguments;
    }
    if (!a.out.empty() && res.witness) {
        try {
            write_file(a.out, serialize(*res.witness));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return bad_arguments;
        }
    }
    p.field("n", a.n);
    p.field("r", a.r);
    p.field("nodes", res.nodes);
    if (res.status == SearchStatus::Optimal) {
        p.field("f_exact", res.upper_bound);
        return ok;
    }
    p.line("budget exhausted");
    p.field("lower_bound", res.lower_bound);
    p.field("upper_bound", res.upper_bound);
    return budget_exhausted;
}

struct BoundsArgs {
    std::optional<std::size_t> d;
    std::optional<std::size_t> k;
    std::optional<std::size_t> r;
    std::string scan_range;
};

inline int bounds(const BoundsArgs& a, Printer& p, std::ostream& err) {
    if (!a.d && !a.r && a.scan_range.empty()) {
        err << "bounds needs --d, --r or --scan-range\n";
        return bad_arguments;
    }
    std::optional<std::size_t> d = a.d;
    if (a.r) {
        if (*a.r < 2) {
            err << "--r must be at least 2\n";
            return bad_arguments;
        }
        // Even r is bounded through r+1.
        const std::size_t implied = *a.r / 2;
        if (d && *d != implied) {
            err << "--d " << *d << " is inconsistent with --r " << *a.r << '\n';
            return bad_arguments;
        }
        d = implied;
    }
    if (d && *d < 1) {
        err << "--d must be at least 1\n";
        return bad_arguments;
    }
    if (a.k && *a.k < 1) {
        err << "--k must be at least 1\n";
        return bad_arguments;
    }

    if (d) {
        const auto rep = theorem1_coefficient(*d, a.k.value_or(1));
        const auto decay = corollary2_bound(a.r.value_or(rep.r));
        p.field("d", rep.d);
        p.field("k", rep.k);
        p.field("r", a.r.value_or(rep.r));
        if (a.r && *a.r % 2 == 0) p.field("odd_source_r", rep.r);
        p.field("coefficient", rep.theorem1_coefficient);
        p.field("coefficient_num", numerator(rep.theorem1_coefficient));
        p.field("coefficient_den", denominator(rep.theorem1_coefficient));
        p.field("coefficient_decimal", decimal(rep.theorem1_coefficient));
        p.field("below_one", rep.coefficient_below_one ? 1 : 0);
        p.field("c_prime", rep.c_prime);
        p.field("epsilon_k", rep.epsilon_k);
        p.field("alon_lower_coefficient", rep.alon_lower_coefficient);
        p.field("corollary2_value", decimal(decay.value));
        if (decay.exact) p.field("corollary2_exact", *decay.exact);
        p.field("corollary2_below_one", decay.value < 1 ? 1 : 0);
        p.field("precision_digits", decay.precision_digits);
    }

    if (!a.scan_range.empty()) {
        const auto colon = a.scan_range.find(':');
        std::size_t lo = 0, hi = 0;
        try {
            if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
            lo = std::stoul(a.scan_range.substr(0, colon));
            hi = std::stoul(a.scan_range.substr(colon + 1));
        } catch (const std::exception&) {
            err << "--scan-range expects <lo>:<hi>\n";
            return bad_arguments;
        }
        if (lo < 1 || hi < lo) {
            err << "--scan-range expects 1 <= lo <= hi\n";
            return bad_arguments;
        }
        const std::size_t threshold = threshold_d();
        for (std::size_t dd = lo; dd <= hi; ++dd) {
            const auto c = theorem1_main_coefficient(dd);
            if (p.porcelain()) {
                p.field("scan_" + std::to_string(dd), decimal(c, 20));
            } else {
                std::ostringstream row;
                row << "d=" << std::setw(5) << std::left << dd << " r=" << std::setw(6) << 2 * dd + 1
                    << decimal(c, 20) << (c < 1 ? "  < 1" : "  >= 1")
                    << (dd == threshold ? "  <- threshold" : "");
                p.line(row.str());
            }
        }
        p.field("threshold_d", threshold);
        p.field("threshold_r", 2 * threshold + 1);
    }
    return ok;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Complete r-partite decompositions of complete r-uniform hypergraphs", "gpd"};
    app.require_subcommand(1);
    bool porcelain = false;
    app.add_flag("--porcelain", porcelain, "Machine-readable key=value output");

    detail::ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a decomposition and write it to a file");
    construct->add_option("--method", ca.method, "stars | baseline | theorem1 | even-from-odd")
        ->required()
        ->check(CLI::IsMember({"stars", "baseline", "theorem1", "even-from-odd"}));
    construct->add_option("--n", ca.n, "Vertex count (class size for theorem1)")->required();
    construct->add_option("--r", ca.r, "Uniformity");
    construct->add_option("--k", ca.k, "Number of classes (theorem1)");
    construct->add_option("--out", ca.out, "Output decomposition file");
    construct->add_option("--blocks", ca.blocks_file, "Block decomposition file used by theorem1");
    construct->add_flag("--porcelain", porcelain);

    std::string verify_in;
    auto* verify = app.add_subcommand("verify", "Exhaustively verify a decomposition file");
    verify->add_option("--in,in", verify_in, "Decomposition file")->required();
    verify->add_flag("--porcelain", porcelain);

    std::size_t blocks_n = 0;
    std::string blocks_out;
    auto* blocks = app.add_subcommand("blocks", "Write the (n-1)^2 star-product block decomposition");
    blocks->add_option("--n", blocks_n, "Class size")->required();
    blocks->add_option("--out", blocks_out, "Output block file")->required();
    blocks->add_flag("--porcelain", porcelain);

    std::string verify_blocks_in;
    auto* verify_blocks_cmd = app.add_subcommand("verify-blocks", "Exhaustively verify a block decomposition file");
    verify_blocks_cmd->add_option("--in,in", verify_blocks_in, "Block decomposition file")->required();
    verify_blocks_cmd->add_flag("--porcelain", porcelain);

    detail::ExactArgs ea;
    double max_seconds = 0;
    auto* exact = app.add_subcommand("exact", "Compute f_r(n) by exhaustive search");
    exact->add_option("--n", ea.n, "Vertex count")->required();
    exact->add_option("--r", ea.r, "Uniformity")->required();
    exact->add_option("--max-nodes", ea.max_nodes, "Node budget");
    auto* secs = exact->add_option("--max-seconds", max_seconds, "Wall-clock budget");
    exact->add_option("--out", ea.out, "Witness decomposition file");
    exact->add_flag("--porcelain", porcelain);

    detail::BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Evaluate the bound formulas");
    bounds->add_option("--d", ba.d, "Half-uniformity, r = 2d+1");
    bounds->add_option("--k", ba.k, "Number of classes");
    bounds->add_option("--r", ba.r, "Uniformity");
    bounds->add_option("--scan-range", ba.scan_range, "Scan d over <lo>:<hi>");
    bounds->add_flag("--porcelain", porcelain);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return bad_arguments;
    }

    detail::Printer p(out, porcelain);
    if (*construct) {
        if (ca.method != "stars" && construct->count("--r") == 0) {
            err << "--r is required for method " << ca.method << '\n';
            return bad_arguments;
        }
        if (ca.method == "stars") ca.r = 2;
        return detail::construct(ca, p, err);
    }
    if (*verify) return detail::verify(verify_in, p, err);
    if (*verify_blocks_cmd) return detail::verify_blocks_file(verify_blocks_in, p, err);
    if (*blocks) {
        try {
            const auto bd = construct_trivial_blocks(blocks_n);
            write_file(blocks_out, serialize(bd));
            p.field("blocks", bd.size());
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return bad_arguments;
        }
        return ok;
    }
    if (*exact) {
        if (secs->count()) ea.max_seconds = max_seconds;
        return detail::exact(ea, p, err);
    }
    return detail::bounds(ba, p, err);
}

}  // namespace gpd::cli
