use serde_json::{json, Value};

use crate::report::RunReport;
use altroute_core::Network;

fn line(net: &Network, names: &[String]) -> Result<Vec<[f64; 2]>, String> {
    names
        .iter()
        .map(|name| {
            let id = net.node_id(name).ok_or_else(|| format!("report names node `{name}`, which the network does not have"))?;
            net.node(id).coord.map(|(lon, lat)| [lon, lat]).ok_or_else(|| format!("node `{name}` has no coordinates"))
        })
        .collect()
}

/// FeatureCollection with one LineString per route.
pub fn export(report: &RunReport, net: &Network) -> Result<Value, String> {
    let feature = |role: &str, names: &[String], flow: f64, time: f64| -> Result<Value, String> {
        Ok(json!({
            "type": "Feature",
            "geometry": { "type": "LineString", "coordinates": line(net, names)? },
            "properties": {
                "role": role,
                "nodes": names,
                "flow": flow,
                "time_per_agent": time,
                "x_p": report.x_p,
                "c_p": report.cost,
            },
        }))
    };
    Ok(json!({
        "type": "FeatureCollection",
        "features": [
            feature("original", &report.route, report.demand - report.x_p, report.time_q)?,
            feature("alternative", &report.path, report.x_p, report.time_p)?,
        ],
    }))
}
