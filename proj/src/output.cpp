#include "vpdg/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vpdg {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& body) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << body;
    }
    std::filesystem::rename(tmp, path);
}

void write_diagnostics_csv(const std::filesystem::path& path, const RunDiagnostics& diag) {
    std::ostringstream os;
    os << "t,mass_dev,l1_dev,l2_dev,energy_dev,e_l2norm,kinetic,potential,penalty\n";
    for (const DiagRow& r : diag.rows) {
        os << format_g17(r.t) << ',' << format_g17(r.mass_dev) << ',' << format_g17(r.l1_dev)
           << ',' << format_g17(r.l2_dev) << ',' << format_g17(r.energy_dev) << ','
           << format_g17(r.e_l2) << ',' << format_g17(r.kinetic) << ','
           << format_g17(r.potential) << ',' << format_g17(r.penalty) << '\n';
    }
    write_file_atomic(path, os.str());
}

void write_fit_csv(const std::filesystem::path& path, std::span<const ExpFit> fits) {
    std::ostringstream os;
    os << "window,c,gamma\n";
    for (const ExpFit& f : fits)
        os << format_g17(f.t_a) << ':' << format_g17(f.t_b) << ',' << format_g17(f.c) << ','
           << format_g17(f.gamma) << '\n';
    write_file_atomic(path, os.str());
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
    std::ostringstream os;
    os << "degree,n,err_f,order_f,err_e,order_e,failed\n";
    for (const ConvergenceRow& r : report.rows) {
        os << r.degree << ',' << r.n << ',' << format_g17(r.err_f) << ','
           << format_g17(r.order_f) << ',' << format_g17(r.err_e) << ','
           << format_g17(r.order_e) << ',' << (r.failed ? 1 : 0) << '\n';
    }
    write_file_atomic(path, os.str());
}

void write_snapshot_csv(const std::filesystem::path& path, const Distribution& f,
                        const NodalBasis1D& basis) {
    const PhaseMesh& mesh = f.mesh();
    const int n1 = basis.n_nodes();
    const int per_cell = 4 * n1;
    // Interior offsets so cell-boundary points are not duplicated.
    std::vector<double> offs(per_cell);
    for (int p = 0; p < per_cell; ++p) offs[p] = (p + 0.5) / per_cell;
    std::vector<double> vals(static_cast<size_t>(per_cell) * n1);
    std::vector<double> unit(n1, 0.0);
    for (int a = 0; a < n1; ++a) {
        unit[a] = 1.0;
        for (int p = 0; p < per_cell; ++p) vals[p * n1 + a] = basis.eval(unit, offs[p]);
        unit[a] = 0.0;
    }

    std::ostringstream os;
    os << "x,v,f\n";
    std::vector<double> row(n1);
    for (int i = 0; i < mesh.nx; ++i)
        for (int px = 0; px < per_cell; ++px) {
            const double x = mesh.x_edges[i] + mesh.x_width(i) * offs[px];
            for (int j = 0; j < mesh.nv; ++j) {
                const auto blk = f.block(i, j);
                for (int m = 0; m < n1; ++m) {
                    double s = 0.0;
                    for (int n = 0; n < n1; ++n) s += vals[px * n1 + n] * blk[n * n1 + m];
                    row[m] = s;
                }
                for (int pv = 0; pv < per_cell; ++pv) {
                    const double v = mesh.v_edges[j] + mesh.v_width(j) * offs[pv];
                    double fv = 0.0;
                    for (int m = 0; m < n1; ++m) fv += vals[pv * n1 + m] * row[m];
                    os << format_g17(x) << ',' << format_g17(v) << ',' << format_g17(fv) << '\n';
                }
            }
        }
    write_file_atomic(path, os.str());
}

DiagSeries read_diagnostics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty diagnostics file");
    int t_col = -1, e_col = -1, col = 0;
    std::stringstream header(line);
    std::string name;
    while (std::getline(header, name, ',')) {
        if (name == "t") t_col = col;
        if (name == "e_l2norm") e_col = col;
        ++col;
    }
    if (t_col < 0 || e_col < 0)
        throw std::runtime_error("diagnostics file lacks t/e_l2norm columns");
    DiagSeries out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int c = 0;
        double tval = 0.0, eval_ = 0.0;
        while (std::getline(ss, cell, ',')) {
            if (c == t_col) tval = std::stod(cell);
            if (c == e_col) eval_ = std::stod(cell);
            ++c;
        }
        out.t.push_back(tval);
        out.e_l2.push_back(eval_);
    }
    return out;
}

}  // namespace vpdg
