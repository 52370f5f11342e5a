// SPDX-License-Identifier: Apache-2.0
//
// ra-multicast: rotatable-antenna multi-group multicast beamforming
// Copyright (C) 2026 The ra-multicast authors
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

#include "ramc/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ramc
{
    namespace
    {
        using nlohmann::json;

        constexpr double deg = pi / 180.0;

        int line_at(const std::string &text, std::size_t offset)
        {
            offset = std::min(offset, text.size());
            return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
        }

        // Locates "section": ... "key" in the raw text; falls back to the section or line 1.
        int line_of(const std::string &text, const std::string &section, const std::string &key)
        {
            std::size_t from = 0;
            if (!section.empty())
            {
                const std::size_t s = text.find('"' + section + '"');
                if (s == std::string::npos)
                    return 1;
                from = s;
            }
            if (key.empty())
                return line_at(text, from);
            const std::size_t k = text.find('"' + key + '"', from);
            return line_at(text, k == std::string::npos ? from : k);
        }

        class Reader
        {
        public:
            Reader(const std::string &text, const std::string &source) : text_(text), source_(source) {}

            [[noreturn]] void fail(const std::string &section, const std::string &key, const std::string &message) const
            {
                const std::string where = section.empty() ? key : (key.empty() ? section : section + "." + key);
                throw ConfigError(source_, line_of(text_, section, key), where + ": " + message);
            }

            void reject_unknown(const json &obj, const std::string &section, const std::set<std::string> &known) const
            {
                if (!obj.is_object())
                    fail(section, "", "expected an object");
                for (auto it = obj.begin(); it != obj.end(); ++it)
                    if (!known.count(it.key()))
                        fail(section, it.key(), "unknown key");
            }

            template <class T>
            void get(const json &obj, const std::string &section, const std::string &key, T &out) const
            {
                if (!obj.contains(key))
                    return;
                const json &v = obj.at(key);
                if constexpr (std::is_same_v<T, double>)
                {
                    if (!v.is_number())
                        fail(section, key, "expected a number");
                    out = v.get<double>();
                }
                else if constexpr (std::is_integral_v<T>)
                {
                    if (!v.is_number_integer())
                        fail(section, key, "expected an integer");
                    if constexpr (std::is_unsigned_v<T>)
                        if (v.get<long long>() < 0)
                            fail(section, key, "expected a non-negative integer");
                    out = v.get<T>();
                }
                else if constexpr (std::is_same_v<T, std::vector<double>>)
                {
                    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_number(); }))
                        fail(section, key, "expected an array of numbers");
                    out = v.get<std::vector<double>>();
                }
                else if constexpr (std::is_same_v<T, std::vector<int>>)
                {
                    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_number_integer(); }))
                        fail(section, key, "expected an array of integers");
                    out = v.get<std::vector<int>>();
                }
                else if constexpr (std::is_same_v<T, std::vector<std::string>>)
                {
                    if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_string(); }))
                        fail(section, key, "expected an array of strings");
                    out = v.get<std::vector<std::string>>();
                }
            }

        private:
            const std::string &text_;
            const std::string &source_;
        };

        std::vector<double> scaled(std::vector<double> v, double factor)
        {
            for (double &x : v)
                x *= factor;
            return v;
        }
    }

    ConfigError::ConfigError(const std::string &source, int line, const std::string &message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line)
    {
    }

    ExperimentConfig ExperimentConfig::defaults()
    {
        ExperimentConfig c;
        for (int p = 0; p <= 20; ++p)
            c.sweeps.power_dbm.push_back(p);
        c.sweeps.arc_angle_rad = {pi / 6, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6, pi};
        c.sweeps.theta_max_rad = {pi / 3, pi / 6, pi / 12};
        c.sweeps.num_antennas = {4, 8, 12, 16, 20};
        c.sweeps.antenna_group_sizes = {4, 4, 4};
        return c;
    }

    void ExperimentConfig::validate() const
    {
        system.validate();
        auto require = [](bool ok, const char *what) {
            if (!ok)
                throw std::invalid_argument(std::string("ExperimentConfig: ") + what);
        };
        require(layout.radius_m > 0.0 && layout.height_m > 0.0, "radius and height must be positive");
        require(layout.arc_angle_rad > 0.0 && layout.arc_angle_rad <= pi + 1e-12, "arc angle must lie in (0, pi]");
        require(seeds >= 1, "need at least one seed");
        require(random_realizations >= 1, "need at least one random realization");
        require(!schemes.empty(), "scheme list is empty");
        require(!sweeps.power_dbm.empty() && !sweeps.arc_angle_rad.empty() && !sweeps.theta_max_rad.empty() &&
                    !sweeps.num_antennas.empty() && !sweeps.antenna_group_sizes.empty(),
                "sweep grids must be non-empty");
        for (double a : sweeps.arc_angle_rad)
            require(a > 0.0 && a <= pi + 1e-12, "swept arc angles must lie in (0, pi]");
        for (double t : sweeps.theta_max_rad)
            require(t > 0.0 && t <= 0.5 * pi + 1e-12, "swept max zenith must lie in (0, pi/2]");
        for (int n : sweeps.num_antennas)
            require(n >= 1, "swept antenna counts must be positive");
        for (int g : sweeps.antenna_group_sizes)
            require(g >= 1, "antenna-sweep groups need at least one user");
    }

    ExperimentConfig parse_experiment_config(const std::string &text, const std::string &source)
    {
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            std::string msg = e.what();
            // Drop the library's "[json.exception.parse_error.101] parse error at line L, column C: " prefix.
            if (const auto colon = msg.find(": "); colon != std::string::npos)
                msg = msg.substr(colon + 2);
            throw ConfigError(source, line_at(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON: " + msg);
        }

        const Reader r(text, source);
        r.reject_unknown(root, "", {"system", "scenario", "experiment", "sweeps"});

        ExperimentConfig c = ExperimentConfig::defaults();
        if (root.contains("system"))
        {
            const json &s = root.at("system");
            r.reject_unknown(s, "system",
                             {"carrier_frequency_hz", "noise_power_dbm", "transmit_power_dbm", "directivity", "max_zenith_deg",
                              "num_antennas", "group_sizes", "element_area_m2", "element_spacing_m", "convergence_threshold",
                              "max_iterations"});
            SystemConfig &sys = c.system;
            r.get(s, "system", "carrier_frequency_hz", sys.carrier_frequency_hz);
            double noise = watt_to_dbm(sys.noise_power_w), power = watt_to_dbm(sys.transmit_power_w);
            r.get(s, "system", "noise_power_dbm", noise);
            r.get(s, "system", "transmit_power_dbm", power);
            sys.noise_power_w = dbm_to_watt(noise);
            sys.transmit_power_w = dbm_to_watt(power);
            r.get(s, "system", "directivity", sys.directivity);
            double zenith = sys.max_zenith_rad / deg;
            r.get(s, "system", "max_zenith_deg", zenith);
            sys.max_zenith_rad = zenith * deg;
            r.get(s, "system", "num_antennas", sys.num_antennas);
            r.get(s, "system", "group_sizes", sys.group_sizes);
            if (s.contains("element_area_m2"))
            {
                double v = 0.0;
                r.get(s, "system", "element_area_m2", v);
                sys.element_area_m2 = v;
            }
            if (s.contains("element_spacing_m"))
            {
                double v = 0.0;
                r.get(s, "system", "element_spacing_m", v);
                sys.element_spacing_m = v;
            }
            r.get(s, "system", "convergence_threshold", sys.convergence_threshold);
            r.get(s, "system", "max_iterations", sys.max_iterations);
        }
        if (root.contains("scenario"))
        {
            const json &s = root.at("scenario");
            r.reject_unknown(s, "scenario", {"radius_m", "height_m", "arc_angle_deg"});
            r.get(s, "scenario", "radius_m", c.layout.radius_m);
            r.get(s, "scenario", "height_m", c.layout.height_m);
            double arc = c.layout.arc_angle_rad / deg;
            r.get(s, "scenario", "arc_angle_deg", arc);
            c.layout.arc_angle_rad = arc * deg;
        }
        if (root.contains("experiment"))
        {
            const json &s = root.at("experiment");
            r.reject_unknown(s, "experiment", {"seeds", "first_seed", "random_realizations", "schemes"});
            r.get(s, "experiment", "seeds", c.seeds);
            r.get(s, "experiment", "first_seed", c.first_seed);
            r.get(s, "experiment", "random_realizations", c.random_realizations);
            r.get(s, "experiment", "schemes", c.schemes);
            static const std::set<std::string> names{"ra_optimized", "fixed_directional", "random_orientation", "isotropic"};
            for (const auto &name : c.schemes)
                if (!names.count(name))
                    r.fail("experiment", "schemes", "unknown scheme '" + name + "'");
        }
        if (root.contains("sweeps"))
        {
            const json &s = root.at("sweeps");
            r.reject_unknown(s, "sweeps", {"power_dbm", "arc_angle_deg", "theta_max_deg", "num_antennas", "antenna_group_sizes"});
            r.get(s, "sweeps", "power_dbm", c.sweeps.power_dbm);
            std::vector<double> arcs = scaled(c.sweeps.arc_angle_rad, 1.0 / deg), limits = scaled(c.sweeps.theta_max_rad, 1.0 / deg);
            r.get(s, "sweeps", "arc_angle_deg", arcs);
            r.get(s, "sweeps", "theta_max_deg", limits);
            c.sweeps.arc_angle_rad = scaled(arcs, deg);
            c.sweeps.theta_max_rad = scaled(limits, deg);
            r.get(s, "sweeps", "num_antennas", c.sweeps.num_antennas);
            r.get(s, "sweeps", "antenna_group_sizes", c.sweeps.antenna_group_sizes);
        }

        try
        {
            c.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(source, 1, e.what());
        }
        return c;
    }

    ExperimentConfig load_experiment_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError(path, 0, "cannot open file");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_experiment_config(buf.str(), path);
    }
}
