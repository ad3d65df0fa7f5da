/*
 * Copyright 2026 The lcg-d2d Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LCG_NET_MODEL_HPP
#define LCG_NET_MODEL_HPP

#include <lcg/coalition.hpp>
#include <lcg/common.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcg::net {

struct Position
{
	double x{0.0};
	double y{0.0};
};

double distance(Position a, Position b);

/// Axis-aligned deployment rectangle [0, width] x [0, height], meters.
struct Area
{
	double width{1000.0};
	double height{1000.0};

	bool contains(Position p) const;
	void validate() const;
};

struct RadioParams
{
	double beta{62.5};          ///< antenna constant
	double path_loss_exp{4.0};  ///< n, at least 2
	double noise_power{1e-12};  ///< sigma^2 in W (-90 dBm)
	double bandwidth{2e6};      ///< W in Hz

	void validate() const;
};

double dbm_to_watts(double dbm);

struct Device
{
	DeviceId id;
	OperatorId owner;
	Position position;
	double max_power{0.02};  ///< Q*_i in W
};

struct Operator
{
	OperatorId id;
	std::vector<DeviceId> devices;
	std::vector<FlowId> flows;
};

struct FlowSession
{
	FlowId id;
	OperatorId owner;
	DeviceId source;
	DeviceId destination;
	double demand{0.0};  ///< bit/s
};

/// How a transmitter splits the band over its outgoing links.
enum class BandShare
{
	per_outdegree,  ///< 1/outdegree per active outgoing link
	full_band,      ///< every link gets the whole band
};

BandShare parse_band_share(std::string_view text);
std::string to_string(BandShare policy);

/// beta * d^-n. Throws std::domain_error for d <= 0.
double channel_gain(double distance_m, const RadioParams& radio);

/// band_share * W * log2(1 + P * g / sigma^2), in bit/s.
double link_capacity(const Device& tx, const Device& rx, const RadioParams& radio, double band_share);

/// The immutable scenario. Devices and flows are indexed by their ids;
/// operators are 1..operator_count(). Full-band link capacities are
/// computed once on construction.
class NetworkInstance
{
public:
	NetworkInstance(std::size_t n_operators, std::vector<Device> devices, std::vector<FlowSession> flows,
	                RadioParams radio, Area area);

	/// Same scenario shape, but full-band link capacities (bit/s, row = tx,
	/// column = rx, row-major n x n) are supplied instead of derived from
	/// geometry. Used for hand-built test topologies.
	static NetworkInstance with_link_capacities(std::size_t n_operators, std::vector<Device> devices,
	                                            std::vector<FlowSession> flows, RadioParams radio, Area area,
	                                            std::vector<double> capacities);

	const std::vector<Device>& devices() const { return devices_; }
	const std::vector<Operator>& operators() const { return operators_; }
	const std::vector<FlowSession>& flows() const { return flows_; }
	const RadioParams& radio() const { return radio_; }
	const Area& area() const { return area_; }

	std::size_t device_count() const { return devices_.size(); }
	std::size_t operator_count() const { return operators_.size(); }

	const Device& device(DeviceId id) const { return devices_.at(id.index()); }
	const Operator& op(OperatorId id) const;
	const FlowSession& flow(FlowId id) const { return flows_.at(id.index()); }

	double full_band_capacity(std::size_t tx, std::size_t rx) const { return capacity_[tx * devices_.size() + rx]; }

	/// Devices that are the source or destination of some flow.
	DeviceSet endpoints() const { return endpoints_; }

private:
	NetworkInstance(std::size_t n_operators, std::vector<Device> devices, std::vector<FlowSession> flows,
	                RadioParams radio, Area area, std::optional<std::vector<double>> capacities);

	std::vector<Device> devices_;
	std::vector<Operator> operators_;
	std::vector<FlowSession> flows_;
	RadioParams radio_;
	Area area_;
	std::vector<double> capacity_;
	DeviceSet endpoints_;
};

/// Candidate neighbour sets A_i: device i may link to any other device whose
/// operator shares a coalition with i's operator.
std::vector<DeviceSet> adjacency(const NetworkInstance& instance, const cfg::CoalitionStructure& view);

} // namespace lcg::net

#endif // LCG_NET_MODEL_HPP
