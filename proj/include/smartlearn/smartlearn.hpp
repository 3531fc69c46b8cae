/*
 * Copyright (C) 2026 The smartlearn authors
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
#pragma once

#include "smartlearn/agent.hpp"
#include "smartlearn/commands.hpp"
#include "smartlearn/csv_io.hpp"
#include "smartlearn/domain.hpp"
#include "smartlearn/engine.hpp"
#include "smartlearn/learning.hpp"
#include "smartlearn/metrics.hpp"
#include "smartlearn/network.hpp"
#include "smartlearn/rng.hpp"
#include "smartlearn/scenario_io.hpp"
#include "smartlearn/time_of_day.hpp"
