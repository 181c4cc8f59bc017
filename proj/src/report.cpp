// SPDX-License-Identifier: Apache-2.0
//
// fddmimo - support-aware downlink training simulator for FDD massive MIMO
// Copyright (C) 2026 The fddmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fddmimo/harness.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fddmimo
{

namespace
{

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

void write_report(const ExperimentReport &report, std::ostream &os)
{
    os << report_header << '\n';
    for (const auto &r : report.rows)
        os << r.method << ',' << r.pilot_dim << ',' << fmt(r.dl_snr_db) << ',' << r.seed << ',' << fmt(r.sum_lb) << ','
           << fmt(r.sum_ub) << ',' << r.served_users << ',' << r.selected_beams << ',' << r.feedback_symbols << ','
           << fmt(r.wall_time) << ',' << r.status << '\n';
}

void write_report(const ExperimentReport &report, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_report: cannot open " + path.string() + " for writing");
    write_report(report, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write_report: write failed for " + path.string());
}

ExperimentReport read_report(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("read_report: empty input, header missing");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != report_header)
        throw std::runtime_error("read_report: unexpected header '" + line + "'");

    ExperimentReport rep;
    std::size_t lineno = 1;
    while (std::getline(is, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 11)
            throw std::runtime_error("read_report: line " + std::to_string(lineno) + " has " +
                                     std::to_string(f.size()) + " fields, expected 11");
        try
        {
            ReportRow r;
            r.method = f[0];
            r.pilot_dim = std::stoul(f[1]);
            r.dl_snr_db = std::stod(f[2]);
            r.seed = std::stoul(f[3]);
            r.sum_lb = std::stod(f[4]);
            r.sum_ub = std::stod(f[5]);
            r.served_users = std::stoul(f[6]);
            r.selected_beams = std::stoul(f[7]);
            r.feedback_symbols = std::stoul(f[8]);
            r.wall_time = std::stod(f[9]);
            r.status = f[10];
            rep.rows.push_back(std::move(r));
        }
        catch (const std::logic_error &)
        {
            throw std::runtime_error("read_report: malformed number on line " + std::to_string(lineno));
        }
    }
    return rep;
}

ExperimentReport read_report(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_report: cannot open " + path.string());
    return read_report(in);
}

void write_timings(const ExperimentReport &report, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_timings: cannot open " + path.string() + " for writing");
    out << "stage,seed,T,seconds\n";
    for (const auto &t : report.timings)
        out << t.stage << ',' << t.seed << ',' << t.pilot_dim << ',' << fmt(t.seconds) << '\n';
}

} // namespace fddmimo
