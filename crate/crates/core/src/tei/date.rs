use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Raw `notBefore` / `notAfter` / `when` attribute strings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DateAttrs {
    pub not_before: Option<String>,
    pub not_after: Option<String>,
    pub when: Option<String>,
}

impl DateAttrs {
    pub fn is_empty(&self) -> bool {
        self.not_before.is_none() && self.not_after.is_none() && self.when.is_none()
    }
}

/// A validated date: Gregorian years, each written with exactly four digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateSpan {
    pub not_before: Option<i32>,
    pub not_after: Option<i32>,
    pub when: Option<i32>,
    pub original_text: Option<String>,
}

impl DateSpan {
    /// Earliest year the span admits, for sorting.
    pub fn earliest(&self) -> Option<i32> {
        self.when.or(self.not_before).or(self.not_after)
    }

    /// `1517`, `0350-0399`, `1517-`, `-1600`.
    pub fn display(&self) -> String {
        let y = |v: i32| format!("{v:04}");
        match (self.when, self.not_before, self.not_after) {
            (Some(w), _, _) => y(w),
            (None, Some(a), Some(b)) => format!("{}-{}", y(a), y(b)),
            (None, Some(a), None) => format!("{}-", y(a)),
            (None, None, Some(b)) => format!("-{}", y(b)),
            (None, None, None) => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DateError {
    #[error("date carries none of notBefore, notAfter, when")]
    Missing,
    #[error("@{attr}=\"{value}\" is not a four-digit year")]
    BadDateFormat { attr: &'static str, value: String },
    #[error("notBefore {not_before} is later than notAfter {not_after}")]
    InvertedSpan { not_before: i32, not_after: i32 },
}

fn year(attr: &'static str, value: &Option<String>) -> Result<Option<i32>, DateError> {
    let Some(v) = value else { return Ok(None) };
    if v.len() != 4 || !v.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DateError::BadDateFormat {
            attr,
            value: v.clone(),
        });
    }
    Ok(Some(v.parse().expect("four ascii digits")))
}

/// Validate date attributes. Only the attributes are checked; the
/// element text is carried through untouched.
pub fn parse_date_attrs(attrs: &DateAttrs, text: Option<&str>) -> Result<DateSpan, DateError> {
    if attrs.is_empty() {
        return Err(DateError::Missing);
    }
    let span = DateSpan {
        not_before: year("notBefore", &attrs.not_before)?,
        not_after: year("notAfter", &attrs.not_after)?,
        when: year("when", &attrs.when)?,
        original_text: text.map(str::to_string),
    };
    if let (Some(a), Some(b)) = (span.not_before, span.not_after) {
        if a > b {
            return Err(DateError::InvertedSpan {
                not_before: a,
                not_after: b,
            });
        }
    }
    Ok(span)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attrs(nb: Option<&str>, na: Option<&str>, w: Option<&str>) -> DateAttrs {
        DateAttrs {
            not_before: nb.map(Into::into),
            not_after: na.map(Into::into),
            when: w.map(Into::into),
        }
    }

    #[test]
    fn fourth_century_range() {
        let d = parse_date_attrs(&attrs(Some("0350"), Some("0399"), None), Some("IVe2")).unwrap();
        assert_eq!((d.not_before, d.not_after), (Some(350), Some(399)));
        assert_eq!(d.original_text.as_deref(), Some("IVe2"));
        assert_eq!(d.display(), "0350-0399");
    }

    #[test]
    fn when() {
        let d = parse_date_attrs(&attrs(None, None, Some("1517")), None).unwrap();
        assert_eq!(d.when, Some(1517));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_date_attrs(&attrs(Some("350"), None, None), None),
            Err(DateError::BadDateFormat { attr: "notBefore", .. })
        ));
        assert!(matches!(
            parse_date_attrs(&attrs(Some("1600"), Some("1500"), None), None),
            Err(DateError::InvertedSpan { .. })
        ));
        assert_eq!(parse_date_attrs(&DateAttrs::default(), None), Err(DateError::Missing));
        assert!(parse_date_attrs(&attrs(None, None, Some("-500")), None).is_err());
    }
}
