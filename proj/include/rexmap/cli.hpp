/*
   Copyright 2026 The rexmap Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file cli.hpp
 * @brief The rexmap command line: verify, scan, partition, firstreturn, orbit, disk.
 *
 * Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
 */

#ifndef REXMAP_CLI_HPP
#define REXMAP_CLI_HPP

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rexmap/demgeneral.hpp"
#include "rexmap/io.hpp"
#include "rexmap/pisot.hpp"
#include "rexmap/rem.hpp"
#include "rexmap/renorm.hpp"

namespace rexmap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct ScanRecord {
    Word word;
    std::string x, xp, y, yp;                     // decimals within 1e-12
    std::array<Rational, 3> x_exact, xp_exact;    // coefficient triples of x and x' over the word's field
    CubicPoly poly;
    bool admissible = false;
    bool multistage = false;
    std::string lambda1, lambda2;
};

/// Every word of length 1..max_len over letters 6..letter_max, in order of length then lexicographically.
inline std::vector<Word> all_words(std::size_t max_len, long letter_max) {
    if (max_len < 1) throw DomainError("max length must be at least 1");
    if (letter_max < 6) throw DomainError("letter max must be at least 6");
    std::vector<Word> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<long> w(len, 6);
        while (true) {
            out.emplace_back(w);
            std::size_t i = len;
            while (i > 0 && w[i - 1] == letter_max) w[--i] = 6;
            if (i == 0) break;
            ++w[i - 1];
        }
    }
    return out;
}

/// Admissible words, deduplicated by their exact (x, x', y, y') (first word kept); optionally only the multistage ones.
inline std::vector<ScanRecord> scan(std::size_t max_len, long letter_max, bool multistage_only) {
    std::vector<ScanRecord> out;
    std::vector<EigenData> kept;
    for (const Word& w : all_words(max_len, letter_max)) {
        EigenData e = eigenvectors(w);
        if (!check_admissible(e).admissible) continue;
        bool duplicate = false;
        for (const auto& k : kept) {
            if (std::fabs(k.xi[1].approx(1) - e.xi[1].approx(1)) > 1e-9L || std::fabs(k.xi[1].approx(2) - e.xi[1].approx(2)) > 1e-9L)
                continue;
            if (same_eigenvectors(k, e)) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        kept.push_back(e);
        ScanRecord r;
        r.word = w;
        r.poly = e.poly;
        r.admissible = true;
        r.multistage = check_multistage(stage_data(e)).multistage;
        if (multistage_only && !r.multistage) continue;
        r.x = decimal_at(e.xi[1], 1);
        r.xp = decimal_at(e.xi[2], 1);
        r.y = decimal_at(e.xi[1], 2);
        r.yp = decimal_at(e.xi[2], 2);
        r.x_exact = e.xi[1].coeffs();
        r.xp_exact = e.xi[2].coeffs();
        r.lambda1 = decimal_at(e.lambda(), 1);
        r.lambda2 = decimal_at(e.lambda(), 2);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string scan_csv(const std::vector<ScanRecord>& recs) {
    std::string s = "word;x;xp;y;yp;admissible;multistage;lambda1;lambda2\n";
    for (const auto& r : recs)
        s += r.word.to_string() + ";" + r.x + ";" + r.xp + ";" + r.y + ";" + r.yp + ";" + (r.admissible ? "1" : "0") + ";" +
             (r.multistage ? "1" : "0") + ";" + r.lambda1 + ";" + r.lambda2 + "\n";
    return s;
}

inline std::string scan_jsonl(const std::vector<ScanRecord>& recs) {
    std::string s;
    for (const auto& r : recs) {
        json j;
        j["word"] = r.word.written();
        j["poly"] = poly_to_json(r.poly);
        j["x"] = r.x;
        j["xp"] = r.xp;
        j["y"] = r.y;
        j["yp"] = r.yp;
        j["x_value"] = json::array({r.x_exact[0].get_str(), r.x_exact[1].get_str(), r.x_exact[2].get_str()});
        j["xp_value"] = json::array({r.xp_exact[0].get_str(), r.xp_exact[1].get_str(), r.xp_exact[2].get_str()});
        j["admissible"] = r.admissible;
        j["multistage"] = r.multistage;
        j["lambda1"] = r.lambda1;
        j["lambda2"] = r.lambda2;
        s += j.dump() + "\n";
    }
    return s;
}

namespace detail {

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw Error("write to '" + path + "' failed");
}

inline std::string check_mark(bool ok) { return ok ? "ok" : "FAILED"; }

inline json conjugacy_json(const ConjugacyCheck& c) {
    json j;
    j["passed"] = c.passed();
    j["vectors"] = c.vectors_ok;
    j["regions"] = c.regions_ok;
    j["lattice"] = c.lattice_ok;
    j["cover"] = c.cover_ok;
    j["codings"] = json::array();
    for (const auto& v : c.codings) j["codings"].push_back(v);
    j["failures"] = c.failures;
    return j;
}

/// The REM of stage k = 1..L of a word (stage L is the word's own).
inline std::vector<REMPartition> stage_partitions(const StageData& s) {
    std::vector<REMPartition> out;
    for (std::size_t k = 1; k <= s.stages(); ++k) out.push_back(build_partition_greedy(s.xi[k]));
    return out;
}

}  // namespace detail

struct VerifyResult {
    bool passed = false;
    json report;
    std::string text;
};

inline VerifyResult verify(const Word& w) {
    VerifyResult r;
    std::ostringstream os;
    json& j = r.report;
    j["word"] = w.written();
    PisotReport pis = check_pisot(w);
    j["pisot"] = pis.verdict;
    j["poly"] = pis.poly.to_string();
    os << "word " << w.to_string() << "  characteristic polynomial " << pis.poly.to_string() << "\n";
    os << "  Pisot (0 < l1 < l2 < 1 < l3): " << detail::check_mark(pis.verdict) << "\n";
    if (!pis.verdict) {
        for (const auto& n : pis.notes) os << "    " << n << "\n";
        r.text = os.str();
        return r;
    }
    EigenData e = eigenvectors(w);
    AdmissibilityReport adm = check_admissible(e);
    j["admissible"] = adm.admissible;
    os << "  admissible: " << detail::check_mark(adm.admissible) << "\n";
    for (const auto& f : adm.failures) os << "    " << f << "\n";
    if (!adm.admissible) {
        r.text = os.str();
        return r;
    }
    REMPartition greedy = build_partition_greedy(e);
    PartitionCheck pc = check_partition(greedy);
    bool closed_ok = partitions_equal(greedy, build_partition_closed(e.xi));
    j["partition"] = {{"tiles_partition", pc.tiles_disjoint && pc.tiles_cover},
                      {"images_partition", pc.images_disjoint && pc.images_cover},
                      {"closed_form_equal", closed_ok}};
    os << "  tiles and images partition the square: " << detail::check_mark(pc.ok()) << "\n";
    os << "  greedy tiles equal the closed form: " << detail::check_mark(closed_ok) << "\n";
    bool ok = pc.ok() && closed_ok;

    if (w.length() == 1) {
        VerificationReport v = verify_single_renorm(w.letter(1));
        j["renormalization"] = detail::conjugacy_json(v.check);
        j["cells"] = v.partition.cells.size();
        os << "  first return to A0: " << v.partition.cells.size() << " cells, conjugacy " << detail::check_mark(v.passed)
           << "\n";
        for (const auto& f : v.check.failures) os << "    " << f << "\n";
        ok = ok && v.passed;
    } else {
        MultistageReport ms = check_multistage(stage_data(e));
        if (!ms.multistage) {
            j["multistage"] = false;
            j["failing_stage"] = ms.failing_stage;
            os << "  multistage: FAILED at stage " << ms.failing_stage << "\n";
            for (const auto& f : ms.stages[ms.failing_stage - 1].failures) os << "    " << f << "\n";
            j["passed"] = false;
            os << "FAILED\n";
            r.text = os.str();
            return r;
        }
        ChainReport c = verify_multistage_renorm(w);
        j["multistage"] = c.multistage.multistage;
        j["direction"] = c.direction();
        j["detailed"] = json::array();
        for (const auto& st : c.detailed)
            j["detailed"].push_back({{"from", st.from}, {"to", st.to}, {"cells", st.cells}, {"check", detail::conjugacy_json(st.check)}});
        j["reverse"] = json::array();
        for (const auto& st : c.reverse) j["reverse"].push_back({{"from", st.from}, {"to", st.to}, {"passed", st.passed}});
        j["wrap"] = {{"from", c.wrap.from}, {"to", c.wrap.to}, {"cells", c.wrap.cells}, {"check", detail::conjugacy_json(c.wrap.check)}};
        os << "  multistage: ok\n";
        for (const auto& st : c.detailed)
            os << "  stage " << st.from << " -> " << st.to << ": " << st.cells << " cells, " << detail::check_mark(st.passed) << "\n";
        for (const auto& st : c.reverse)
            os << "  reverse stage " << st.from << " -> " << st.to << ": " << (st.passed ? "holds" : "does not hold") << "\n";
        os << "  closing stage " << c.wrap.from << " -> " << c.wrap.to << ": " << c.wrap.cells << " cells, "
           << detail::check_mark(c.wrap.passed) << "\n";
        os << "  direction that held: " << c.direction() << "\n";
        ok = ok && c.passed;
    }
    for (std::size_t k = 0; k < w.length(); ++k) {
        LatticeConjugacyReport lc = lattice_conjugacy_check(w, k, 200);
        j["lattice_conjugacy"].push_back({{"stage", k}, {"passed", lc.passed}, {"sampled", lc.sampled}});
        os << "  lattice conjugacy Psi_" << k << " on " << lc.sampled << " points: " << detail::check_mark(lc.passed) << "\n";
        for (const auto& f : lc.failures) os << "    " << f << "\n";
        ok = ok && lc.passed;
    }
    r.passed = ok;
    j["passed"] = ok;
    os << (ok ? "PASSED" : "FAILED") << "\n";
    r.text = os.str();
    return r;
}

/// First return of stage k (1..L) to its A0, with the target tile of every cell.
struct FirstReturnResult {
    ReturnPartition partition;
    ConjugacyCheck check;
    std::vector<int> target_tile;
};

inline FirstReturnResult first_return(const Word& w, std::size_t stage) {
    if (stage < 1 || stage > w.length())
        throw DomainError("stage must lie in 1.." + std::to_string(w.length()) + ", got " + std::to_string(stage));
    EigenData e = eigenvectors(w);
    if (!check_admissible(e).admissible) throw NotAdmissible("word " + w.to_string() + " is not admissible");
    StageData s = stage_data(e);
    if (w.length() > 1 && !check_multistage(s).multistage) throw NotMultistage("word " + w.to_string() + " is not multistage");
    auto rems = detail::stage_partitions(s);
    std::size_t to = stage == w.length() ? 1 : stage + 1;
    const REMPartition& src = rems[stage - 1];
    FirstReturnResult r;
    r.partition = first_return_partition(src, src.tiles[0]);
    AffineConjugacy phi{s.x(stage), s.x(stage)};
    long letter = w.letter(stage == w.length() ? 1 : stage + 1);
    r.check = check_conjugacy(r.partition, phi, rems[to - 1], generator_matrix(letter));
    std::map<std::string, int> tile_of;
    for (int k = 0; k < kTiles; ++k)
        for (const auto& c : r.check.codings[static_cast<std::size_t>(k)]) tile_of[c] = k;
    for (const auto& c : r.partition.cells) r.target_tile.push_back(tile_of.count(c.coding) ? tile_of[c.coding] : -1);
    return r;
}

/// "k coding coding ..." per target tile, codings sorted.
inline std::string codings_text(const ConjugacyCheck& c) {
    std::string s;
    for (int k = 0; k < kTiles; ++k) {
        auto v = c.codings[static_cast<std::size_t>(k)];
        std::sort(v.begin(), v.end());
        s += std::to_string(k);
        for (const auto& x : v) s += " " + x;
        s += "\n";
    }
    return s;
}

inline Rational parse_point_coordinate(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos || s.find('.') == std::string::npos) return parse_rational(s);
    Rational q;
    std::string digits = s;
    auto dot = digits.find('.');
    std::size_t decimals = digits.size() - dot - 1;
    digits.erase(dot, 1);
    Rational num = parse_rational(digits);
    Integer den = 1;
    for (std::size_t i = 0; i < decimals; ++i) den *= 10;
    q = num / Rational(den);
    q.canonicalize();
    return q;
}

/// Runs the command line; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact rectangle exchange maps from Pisot words"};
    app.require_subcommand(1);
    std::string target, format, out_path, start = "1/3,1/7", window = "disk";
    std::size_t max_len = 0, steps = 1000, stage = 1;
    long letter_max = 9;
    double zmax = 500, eps = 0.05;
    bool multistage_only = false;

    auto* verify_cmd = app.add_subcommand("verify", "check the renormalization of a word or generator index exactly");
    verify_cmd->add_option("target", target, "generator index n or word n_L,...,n_1")->required();
    verify_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--out", out_path, "write the JSON report here");

    auto* scan_cmd = app.add_subcommand("scan", "scan words for admissible and multistage exchanges");
    scan_cmd->add_option("--max-len", max_len, "longest word")->required();
    scan_cmd->add_option("--letter-max", letter_max, "largest letter (letters start at 6)");
    scan_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--out", out_path, "output file (default stdout)");
    scan_cmd->add_flag("--multistage-only", multistage_only, "keep only multistage words");

    auto* part_cmd = app.add_subcommand("partition", "emit the tile partition");
    part_cmd->add_option("target", target, "generator index n or word")->required();
    part_cmd->add_option("--format", format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
    part_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* fr_cmd = app.add_subcommand("firstreturn", "emit the first-return partition of A0");
    fr_cmd->add_option("target", target, "generator index n or word")->required();
    fr_cmd->add_option("--stage", stage, "stage k in 1..L");
    fr_cmd->add_option("--format", format, "codings, golden or svg")->check(CLI::IsMember({"codings", "golden", "svg"}));
    fr_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* orbit_cmd = app.add_subcommand("orbit", "forward orbit of the exchange and grid coverage");
    orbit_cmd->add_option("target", target, "generator index n or word")->required();
    orbit_cmd->add_option("--steps", steps, "number of steps");
    orbit_cmd->add_option("--eps", eps, "coverage grid size");
    orbit_cmd->add_option("--start", start, "start point x,y (rationals or decimals)");
    orbit_cmd->add_option("--format", format, "text or svg")->check(CLI::IsMember({"text", "svg"}));
    orbit_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* disk_cmd = app.add_subcommand("disk", "approximate exchange on a smooth window (floating point)");
    disk_cmd->add_option("target", target, "generator index n")->default_val("6");
    disk_cmd->add_option("--window", window, "disk, ellipse or square")->check(CLI::IsMember({"disk", "ellipse", "square"}));
    disk_cmd->add_option("--zmax", zmax, "height of the enumeration slab");
    disk_cmd->add_option("--steps", steps, "orbit length");
    disk_cmd->add_option("--eps", eps, "coverage grid size");
    disk_cmd->add_option("--format", format, "text or svg")->check(CLI::IsMember({"text", "svg"}));
    disk_cmd->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*verify_cmd) {
            VerifyResult r = verify(parse_word(target));
            if (format == "json") out << r.report.dump(2) << "\n";
            else out << r.text;
            if (!out_path.empty()) detail::emit(r.report.dump(2) + "\n", out_path, out);
            return r.passed ? kExitOk : kExitFailed;
        }
        if (*scan_cmd) {
            auto recs = scan(max_len, letter_max, multistage_only);
            detail::emit(format == "json" ? scan_jsonl(recs) : scan_csv(recs), out_path, out);
            if (!out_path.empty()) out << recs.size() << " records\n";
            return kExitOk;
        }
        if (*part_cmd) {
            Word w = parse_word(target);
            EigenData e = eigenvectors(w);
            AdmissibilityReport adm = check_admissible(e);
            if (!adm.admissible) throw NotAdmissible("word " + w.to_string() + " is not admissible");
            StageData s = stage_data(e);
            bool multi = w.length() > 1 && check_multistage(s).multistage;
            REMPartition top = build_partition_greedy(e);
            if (format == "svg") {
                std::vector<REMPartition> panels;
                std::vector<std::string> labels;
                if (multi) {
                    panels = detail::stage_partitions(s);
                    for (std::size_t k = 1; k <= s.stages(); ++k) labels.push_back(w.to_string() + ", stage " + std::to_string(k));
                } else {
                    panels.push_back(top);
                    labels.push_back(w.to_string());
                }
                detail::emit(partition_svg(panels, labels), out_path, out);
            } else {
                json j = partition_to_json(top, w.written());
                if (multi) {
                    j["stages"] = json::array();
                    auto rems = detail::stage_partitions(s);
                    for (std::size_t k = 0; k < rems.size(); ++k) j["stages"].push_back(partition_to_json(rems[k], w.prefix(k + 1).written()));
                }
                detail::emit(j.dump(1) + "\n", out_path, out);
            }
            return kExitOk;
        }
        if (*fr_cmd) {
            Word w = parse_word(target);
            if (stage < 1 || stage > w.length()) {
                err << "error: stage must lie in 1.." << w.length() << "\n";
                return kExitUsage;
            }
            FirstReturnResult r = first_return(w, stage);
            std::string text;
            if (format == "svg")
                text = first_return_svg(r.partition, r.target_tile, w.to_string() + ", stage " + std::to_string(stage));
            else if (format == "golden")
                text = golden_lines(r.partition);
            else
                text = codings_text(r.check);
            detail::emit(text, out_path, out);
            if (!out_path.empty()) out << r.partition.cells.size() << " cells, conjugacy " << (r.check.passed() ? "holds" : "fails") << "\n";
            return r.check.passed() ? kExitOk : kExitFailed;
        }
        if (*orbit_cmd) {
            Word w = parse_word(target);
            EigenData e = eigenvectors(w);
            if (!check_admissible(e).admissible) throw NotAdmissible("word " + w.to_string() + " is not admissible");
            REMPartition rem = build_partition_greedy(e);
            auto comma = start.find(',');
            if (comma == std::string::npos) throw ParseError("start must be x,y");
            Rational sx = parse_point_coordinate(start.substr(0, comma)), sy = parse_point_coordinate(start.substr(comma + 1));
            ExactPoint2 p{FieldElement(e.field, sx), FieldElement(e.field, sy)};
            if (format == "svg") {
                FastOrbit orb(rem, p);
                std::vector<std::pair<double, double>> pts{{static_cast<double>(orb.x()), static_cast<double>(orb.y())}};
                for (std::size_t i = 0; i < steps && orb.step(); ++i) pts.emplace_back(static_cast<double>(orb.x()), static_cast<double>(orb.y()));
                detail::emit(orbit_svg(pts, w.to_string() + ", " + std::to_string(pts.size() - 1) + " steps"), out_path, out);
                return kExitOk;
            }
            CoverageReport c = empirical_minimality(rem, p, eps, steps);
            std::ostringstream os;
            os << "word " << w.to_string() << " start " << start << "\n"
               << "  steps run: " << c.steps_run << "\n"
               << "  cells visited: " << c.cells_visited << " of " << c.cells_total << " (eps " << c.eps << ")\n"
               << "  coverage: " << c.coverage << "\n"
               << "  exact fallbacks: " << c.exact_fallbacks << "\n";
            if (c.boundary_hit) os << "  orbit reached a tile boundary at step " << *c.boundary_hit << "\n";
            os << "  note: " << c.note << "\n";
            detail::emit(os.str(), out_path, out);
            return kExitOk;
        }
        if (*disk_cmd) {
            Word w = parse_word(target);
            if (w.length() != 1) throw DomainError("disk takes a single generator index");
            long n = w.letter(1);
            SmoothWindow wnd = window == "square" ? SmoothWindow::square(0, 0, 1)
                               : window == "ellipse" ? SmoothWindow::ellipse(0, 0, 1, 0.6L)
                                                     : SmoothWindow::disk(0, 0, 1);
            GeneralDEM dem = build_general_dem(wnd, n, zmax);
            long double x0, x1, y0, y1;
            wnd.bounding_box(x0, x1, y0, y1);
            long double px = x0 + (x1 - x0) * 0.5L + 0.0123L, py = y0 + (y1 - y0) * 0.5L + 0.0456L;
            auto orbit = orbit_general(dem, px, py, steps);
            if (format == "svg") {
                detail::emit(general_dem_svg(dem, orbit), out_path, out);
                return kExitOk;
            }
            std::size_t unreliable = 0;
            for (const auto& q : orbit) unreliable += q.unreliable ? 1 : 0;
            std::ostringstream os;
            os << dem.banner << "\n"
               << "  window: " << wnd.describe() << ", n = " << n << ", zmax = " << zmax << "\n"
               << "  lattice points: " << dem.points << " (" << dem.borderline_points << " within 1e-9 of the boundary)\n"
               << "  steps: " << dem.steps.size() << "\n";
            for (std::size_t i = 0; i < dem.steps.size(); ++i)
                os << "    " << i << " " << dem.steps[i].to_string() << "  v = (" << static_cast<double>(dem.vectors[i].first) << ", "
                   << static_cast<double>(dem.vectors[i].second) << ")\n";
            os << "  orbit: " << orbit.size() - 1 << " steps, " << unreliable << " flagged unreliable\n"
               << "  coverage (eps " << eps << "): " << general_coverage(dem, orbit, eps) << "\n";
            detail::emit(os.str(), out_path, out);
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}

}  // namespace rexmap::cli

#endif
