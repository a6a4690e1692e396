#include "ionrot/ramps.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <stdexcept>

#include "ionrot/table.hpp"

namespace ionrot {

void RampTable::validate() const {
  if (times.size() < 2) throw std::invalid_argument("RampTable: need at least two rows");
  if (values.size() != times.size())
    throw std::invalid_argument("RampTable: times/values row mismatch");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("RampTable: times must be strictly increasing");
  for (const auto& row : values)
    if (row.size() != channels.size())
      throw std::invalid_argument("RampTable: row width does not match channel count");
}

std::size_t RampTable::channel_index(const std::string& name) const {
  const auto it = std::find(channels.begin(), channels.end(), name);
  if (it == channels.end()) throw std::invalid_argument("RampTable: unknown channel " + name);
  return static_cast<std::size_t>(it - channels.begin());
}

double RampTable::value_at(double t, std::size_t channel) const {
  if (t <= times.front()) return values.front()[channel];
  if (t >= times.back()) return values.back()[channel];
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const size_t hi = static_cast<size_t>(it - times.begin());
  const size_t lo = hi - 1;
  const double u = (t - times[lo]) / (times[hi] - times[lo]);
  return values[lo][channel] + u * (values[hi][channel] - values[lo][channel]);
}

RampTable key_position_ramp(const std::vector<std::string>& channels,
                            const std::vector<KeyPosition>& keys, double t_swap) {
  if (keys.size() < 2) throw std::invalid_argument("key_position_ramp: need at least two keys");
  if (!(t_swap > 0)) throw std::invalid_argument("key_position_ramp: t_swap must be > 0");
  RampTable ramp;
  ramp.channels = channels;
  const double span = keys.back().angle_deg - keys.front().angle_deg;
  if (!(span > 0))
    throw std::invalid_argument("key_position_ramp: key angles must be increasing");
  for (const auto& k : keys) {
    ramp.times.push_back((k.angle_deg - keys.front().angle_deg) / span * t_swap);
    ramp.values.push_back(k.channel_values);
  }
  ramp.validate();
  return ramp;
}

RampTable rc_filter(const RampTable& ramp, double f_cutoff) {
  ramp.validate();
  if (!(f_cutoff > 0)) throw std::invalid_argument("rc_filter: f_cutoff must be > 0");

  constexpr double two_pi = 6.283185307179586;
  const double tau = 1.0 / (two_pi * f_cutoff);
  const double span = ramp.t_end() - ramp.t_begin();
  const double dt = std::min(1.0 / (50.0 * f_cutoff), span / 50.0);
  const long long n = static_cast<long long>(std::ceil(span / dt));
  const double h = span / static_cast<double>(n);
  const double decay = std::exp(-h / tau);

  RampTable out;
  out.channels = ramp.channels;
  out.times.resize(static_cast<size_t>(n) + 1);
  out.values.assign(static_cast<size_t>(n) + 1,
                    std::vector<double>(ramp.channels.size(), 0.0));
  for (long long i = 0; i <= n; ++i)
    out.times[static_cast<size_t>(i)] = ramp.t_begin() + h * static_cast<double>(i);
  out.times.back() = ramp.t_end();

  for (size_t c = 0; c < ramp.channels.size(); ++c) {
    double y = ramp.values.front()[c];
    double x_prev = y;
    out.values[0][c] = y;
    for (long long i = 1; i <= n; ++i) {
      const double x = ramp.value_at(out.times[static_cast<size_t>(i)], c);
      const double slope = (x - x_prev) / h;
      // Exact response to a linear segment: y -> x - s*tau + (y0 - x0 + s*tau) e^{-h/tau}
      y = x - slope * tau + (y - x_prev + slope * tau) * decay;
      out.values[static_cast<size_t>(i)][c] = y;
      x_prev = x;
    }
  }
  return out;
}

namespace {
// Rows: offset, x-balance, y-balance, diagonal; columns: TL, TR, BL, BR.
constexpr double kPattern[4][4] = {
    {1, 1, 1, 1},
    {1, -1, 1, -1},
    {1, 1, -1, -1},
    {1, -1, -1, 1},
};
}  // namespace

std::array<double, 4> steering_to_electrodes(const SteeringBasis& basis) {
  const double s[4] = {basis.offset, basis.x_balance, basis.y_balance, basis.diagonal};
  std::array<double, 4> v{};
  for (int e = 0; e < 4; ++e)
    for (int b = 0; b < 4; ++b) v[e] += kPattern[b][e] * s[b];
  return v;
}

SteeringBasis electrodes_to_steering(const std::array<double, 4>& volts) {
  double s[4] = {0, 0, 0, 0};
  for (int b = 0; b < 4; ++b) {
    for (int e = 0; e < 4; ++e) s[b] += kPattern[b][e] * volts[e];
    s[b] *= 0.25;  // patterns are orthogonal with norm^2 = 4
  }
  return {s[0], s[1], s[2], s[3]};
}

std::string ramp_to_csv(const RampTable& ramp) {
  ramp.validate();
  Table t;
  t.columns.push_back("time_s");
  for (const auto& c : ramp.channels) t.columns.push_back(c);
  for (size_t i = 0; i < ramp.times.size(); ++i) {
    std::vector<Cell> row;
    row.emplace_back(ramp.times[i]);
    for (double v : ramp.values[i]) row.emplace_back(v);
    t.add_row(std::move(row));
  }
  return emit_csv(t);
}

RampTable ramp_from_csv(const std::string& csv) {
  const auto rows = parse_csv(csv);
  if (rows.size() < 3 || rows.front().size() < 2)
    throw std::invalid_argument("ramp_from_csv: need a header and at least two rows");
  RampTable ramp;
  for (size_t c = 1; c < rows.front().size(); ++c) ramp.channels.push_back(rows.front()[c]);
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows.front().size())
      throw std::invalid_argument("ramp_from_csv: ragged row");
    std::vector<double> vals;
    for (size_t c = 0; c < row.size(); ++c) {
      double v = 0;
      const auto res = std::from_chars(row[c].data(), row[c].data() + row[c].size(), v);
      if (res.ec != std::errc())
        throw std::invalid_argument("ramp_from_csv: non-numeric cell '" + row[c] + "'");
      if (c == 0)
        ramp.times.push_back(v);
      else
        vals.push_back(v);
    }
    ramp.values.push_back(std::move(vals));
  }
  ramp.validate();
  return ramp;
}

}  // namespace ionrot
