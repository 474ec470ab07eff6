//! Reference grounding metrics: a one-pass implementation kept separate
//! from the production code path.

/// Returns (R@0.3, R@0.5, R@0.7, mIoU, mIoP) for (prediction, truth)
/// interval pairs. Degenerate inputs contribute zero rather than erroring,
/// matching the production conventions.
pub fn reference_grounding_report(pairs: &[((f64, f64), (f64, f64))]) -> (f64, f64, f64, f64, f64) {
    let n = pairs.len() as f64;
    let (mut hits3, mut hits5, mut hits7) = (0.0f64, 0.0f64, 0.0f64);
    let mut iou_sum = 0.0f64;
    let mut iop_sum = 0.0f64;
    for ((ps, pe), (gs, ge)) in pairs {
        let inter = (pe.min(*ge) - ps.max(*gs)).max(0.0);
        let union = (pe.max(*ge) - ps.min(*gs)).max(0.0);
        let iou = if union > 0.0 { inter / union } else { 0.0 };
        let pred_len = pe - ps;
        let iop = if pred_len > 0.0 { inter / pred_len } else { 0.0 };
        if iou >= 0.3 {
            hits3 += 1.0;
        }
        if iou >= 0.5 {
            hits5 += 1.0;
        }
        if iou >= 0.7 {
            hits7 += 1.0;
        }
        iou_sum += iou;
        iop_sum += iop;
    }
    (hits3 / n, hits5 / n, hits7 / n, iou_sum / n, iop_sum / n)
}
