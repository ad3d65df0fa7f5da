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

#include <lcg/net_model.hpp>

#include <cmath>
#include <stdexcept>

namespace lcg::net {

double distance(Position a, Position b)
{
	return std::hypot(a.x - b.x, a.y - b.y);
}

bool Area::contains(Position p) const
{
	return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
}

void Area::validate() const
{
	if (!(width > 0.0) || !(height > 0.0)) {
		throw ConfigError("area must have positive width and height");
	}
}

void RadioParams::validate() const
{
	if (!(beta > 0.0) || !(noise_power > 0.0) || !(bandwidth > 0.0)) {
		throw ConfigError("radio parameters must be strictly positive");
	}
	if (!(path_loss_exp >= 2.0)) {
		throw ConfigError("path loss exponent must be at least 2");
	}
}

double dbm_to_watts(double dbm)
{
	return std::pow(10.0, dbm / 10.0) * 1e-3;
}

BandShare parse_band_share(std::string_view text)
{
	if (text == "per-outdegree") {
		return BandShare::per_outdegree;
	}
	if (text == "full-band") {
		return BandShare::full_band;
	}
	throw ConfigError("unknown band share policy '" + std::string(text) + "'");
}

std::string to_string(BandShare policy)
{
	return policy == BandShare::per_outdegree ? "per-outdegree" : "full-band";
}

double channel_gain(double distance_m, const RadioParams& radio)
{
	if (!(distance_m > 0.0)) {
		throw std::domain_error("channel gain undefined for non-positive distance");
	}
	return radio.beta * std::pow(distance_m, -radio.path_loss_exp);
}

double link_capacity(const Device& tx, const Device& rx, const RadioParams& radio, double band_share)
{
	if (tx.id == rx.id) {
		throw std::invalid_argument("link capacity requested for a self-loop");
	}
	const double gain = channel_gain(distance(tx.position, rx.position), radio);
	const double snr = tx.max_power * gain / radio.noise_power;
	return band_share * radio.bandwidth * std::log2(1.0 + snr);
}

NetworkInstance::NetworkInstance(std::size_t n_operators, std::vector<Device> devices,
                                 std::vector<FlowSession> flows, RadioParams radio, Area area)
	: NetworkInstance(n_operators, std::move(devices), std::move(flows), radio, area, std::nullopt)
{
}

NetworkInstance NetworkInstance::with_link_capacities(std::size_t n_operators, std::vector<Device> devices,
                                                      std::vector<FlowSession> flows, RadioParams radio,
                                                      Area area, std::vector<double> capacities)
{
	return NetworkInstance(n_operators, std::move(devices), std::move(flows), radio, area, std::move(capacities));
}

NetworkInstance::NetworkInstance(std::size_t n_operators, std::vector<Device> devices,
                                 std::vector<FlowSession> flows, RadioParams radio, Area area,
                                 std::optional<std::vector<double>> capacities)
	: devices_(std::move(devices)), flows_(std::move(flows)), radio_(radio), area_(area)
{
	radio_.validate();
	area_.validate();
	if (n_operators == 0 || n_operators > cfg::Coalition::max_operators) {
		throw ConfigError("operator count must be in 1.." + std::to_string(cfg::Coalition::max_operators));
	}
	if (devices_.size() > DeviceSet::capacity) {
		throw ConfigError("at most " + std::to_string(DeviceSet::capacity) + " devices per instance");
	}
	operators_.resize(n_operators);
	for (std::size_t h = 0; h < n_operators; ++h) {
		operators_[h].id = OperatorId{static_cast<std::uint32_t>(h + 1)};
	}
	for (std::size_t i = 0; i < devices_.size(); ++i) {
		const Device& d = devices_[i];
		if (d.id.index() != i) {
			throw ConfigError("device ids must equal their index");
		}
		if (d.owner.value < 1 || d.owner.value > n_operators) {
			throw ConfigError("device " + std::to_string(i) + " has an unknown operator");
		}
		if (!area_.contains(d.position)) {
			throw ConfigError("device " + std::to_string(i) + " lies outside the area");
		}
		if (!(d.max_power > 0.0)) {
			throw ConfigError("device " + std::to_string(i) + " must have positive transmit power");
		}
		operators_[d.owner.index() - 1].devices.push_back(d.id);
	}
	for (std::size_t l = 0; l < flows_.size(); ++l) {
		const FlowSession& f = flows_[l];
		if (f.id.index() != l) {
			throw ConfigError("flow ids must equal their index");
		}
		if (f.owner.value < 1 || f.owner.value > n_operators) {
			throw ConfigError("flow " + std::to_string(l) + " has an unknown operator");
		}
		if (f.source.index() >= devices_.size() || f.destination.index() >= devices_.size()) {
			throw ConfigError("flow " + std::to_string(l) + " references an unknown device");
		}
		if (f.source == f.destination) {
			throw ConfigError("flow " + std::to_string(l) + " has identical source and destination");
		}
		if (!(f.demand > 0.0)) {
			throw ConfigError("flow " + std::to_string(l) + " must have a positive demand");
		}
		if (device(f.source).owner != f.owner || device(f.destination).owner != f.owner) {
			throw ConfigError("flow " + std::to_string(l) + " endpoints must belong to its operator");
		}
		operators_[f.owner.index() - 1].flows.push_back(f.id);
		endpoints_.insert(f.source);
		endpoints_.insert(f.destination);
	}

	const std::size_t n = devices_.size();
	if (capacities) {
		if (capacities->size() != n * n) {
			throw ConfigError("capacity matrix must be n x n");
		}
		capacity_ = std::move(*capacities);
		for (std::size_t i = 0; i < n; ++i) {
			capacity_[i * n + i] = 0.0;
		}
		for (double c : capacity_) {
			if (!(c >= 0.0)) {
				throw ConfigError("link capacities must be non-negative");
			}
		}
	} else {
		capacity_.assign(n * n, 0.0);
		for (std::size_t i = 0; i < n; ++i) {
			for (std::size_t j = 0; j < n; ++j) {
				if (i != j) {
					capacity_[i * n + j] = link_capacity(devices_[i], devices_[j], radio_, 1.0);
				}
			}
		}
	}
}

const Operator& NetworkInstance::op(OperatorId id) const
{
	if (id.value < 1 || id.value > operators_.size()) {
		throw std::out_of_range("unknown operator " + std::to_string(id.value));
	}
	return operators_[id.index() - 1];
}

std::vector<DeviceSet> adjacency(const NetworkInstance& instance, const cfg::CoalitionStructure& view)
{
	if (view.size() == 0) {
		throw std::invalid_argument("coalition view must not be empty");
	}
	const std::size_t n_ops = instance.operator_count();
	if (view.players().without(cfg::Coalition::all(n_ops)).mask() != 0) {
		throw std::invalid_argument("coalition view references an unknown operator");
	}

	std::vector<DeviceSet> by_operator(n_ops);
	for (const auto& d : instance.devices()) {
		by_operator[d.owner.index() - 1].insert(d.id);
	}

	std::vector<DeviceSet> out(instance.device_count());
	for (const auto& d : instance.devices()) {
		// Operators not in the view at all keep only their own devices.
		const cfg::Coalition partners = view.partners(d.owner).with(d.owner);
		DeviceSet reach;
		for (auto h : partners.members()) {
			reach = reach | by_operator[h.index() - 1];
		}
		reach.erase(d.id);
		out[d.id.index()] = reach;
	}
	return out;
}

} // namespace lcg::net
