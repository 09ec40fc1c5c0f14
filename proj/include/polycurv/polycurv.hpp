/*
 * polycurv: discrete curvatures and rigidity solvers for bordered
 * polyhedral surfaces.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "polycurv/audit.hpp"
#include "polycurv/charts.hpp"
#include "polycurv/common.hpp"
#include "polycurv/curvature.hpp"
#include "polycurv/energy.hpp"
#include "polycurv/generators.hpp"
#include "polycurv/mesh_io.hpp"
#include "polycurv/packing.hpp"
#include "polycurv/polygon.hpp"
#include "polycurv/quadrature.hpp"
#include "polycurv/solver.hpp"
#include "polycurv/surface.hpp"
#include "polycurv/svg.hpp"
#include "polycurv/triangle.hpp"
