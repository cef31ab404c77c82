//! Chat log parsing.
//!
//! Logs are line oriented. A user message looks like `[HH:MM] <name> body`,
//! an action like `[HH:MM] * name body`, and channel events start with `===`.
//! Not every `===` line is a channel event: clients also render `/me`
//! actions that way, so only lines matching the join/leave/quit/topic/nick
//! templates are classified as [`MessageKind::System`].

mod annotation;
mod sample;
pub mod synthetic;
mod tokenize;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use annotation::{read_annotations, write_annotations};
pub use sample::{infer_context, load_sample, load_split, sample_name, AnnotatedSample, SampleFiles};
pub use tokenize::{is_punctuation_token, tokenize};

const MINUTES_PER_DAY: i64 = 24 * 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MessageKind {
    Normal,
    System,
    Action,
}

/// One parsed chat line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Message {
    pub index: usize,
    /// Minutes since midnight of the first day in the log.
    pub timestamp: i64,
    pub speaker: String,
    pub kind: MessageKind,
    pub raw: String,
    /// Message body without timestamp and speaker.
    pub text: String,
    pub tokens: Vec<String>,
    pub target: Option<String>,
}

impl Message {
    pub fn is_system(&self) -> bool {
        self.kind == MessageKind::System
    }
}

/// Case-insensitive username lookup that remembers the first spelling seen.
#[derive(Debug, Clone, Default)]
pub struct UserSet {
    names: HashMap<String, String>,
}

impl UserSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str) {
        if name.is_empty() {
            return;
        }
        self.names
            .entry(name.to_lowercase())
            .or_insert_with(|| name.to_string());
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.names.get(&name.to_lowercase()).map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Speakers of all user-authored (non-system) messages.
    pub fn from_messages(messages: &[Message]) -> Self {
        let mut users = Self::new();
        for m in messages.iter().filter(|m| !m.is_system()) {
            users.insert(&m.speaker);
        }
        users
    }
}

impl<S: AsRef<str>> FromIterator<S> for UserSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut users = Self::new();
        for name in iter {
            users.insert(name.as_ref());
        }
        users
    }
}

/// Parses a log, detecting directed messages against the sample's own speakers.
pub fn parse_log(text: &str) -> Result<Vec<Message>> {
    parse_log_with_roster(text, &[] as &[&str])
}

/// Like [`parse_log`], with extra usernames that may be addressed even if
/// they never speak in the sample.
pub fn parse_log_with_roster<S: AsRef<str>>(text: &str, roster: &[S]) -> Result<Vec<Message>> {
    let mut messages = Vec::new();
    let mut clock = Clock::default();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut message = parse_line(line, lineno + 1, &mut clock)?;
        message.index = messages.len();
        messages.push(message);
    }

    let mut users = UserSet::from_messages(&messages);
    for name in roster {
        users.insert(name.as_ref());
    }
    for m in &mut messages {
        m.target = detect_target(m, &users);
    }
    Ok(messages)
}

#[derive(Default)]
struct Clock {
    last_raw: Option<i64>,
    day_offset: i64,
}

impl Clock {
    fn observe(&mut self, raw: i64) -> i64 {
        if let Some(last) = self.last_raw {
            if raw < last {
                self.day_offset += MINUTES_PER_DAY;
            }
        }
        self.last_raw = Some(raw);
        raw + self.day_offset
    }

    fn current(&self) -> i64 {
        self.last_raw.map_or(0, |raw| raw + self.day_offset)
    }
}

fn parse_line(line: &str, lineno: usize, clock: &mut Clock) -> Result<Message> {
    let (timestamp, rest) = match split_timestamp(line, lineno)? {
        Some((raw, rest)) => (clock.observe(raw), rest),
        None => (clock.current(), line),
    };

    let rest = rest.trim_start();
    if let Some(event) = rest.strip_prefix("===") {
        return Ok(parse_event(line, event.trim(), timestamp));
    }
    if let Some(body) = rest.strip_prefix('<') {
        let close = body
            .find('>')
            .ok_or_else(|| Error::parse(lineno, "user message has no closing '>'"))?;
        let speaker = body[..close].trim();
        let text = body[close + 1..].strip_prefix(' ').unwrap_or(&body[close + 1..]);
        return Ok(build(line, timestamp, speaker, MessageKind::Normal, text));
    }
    if let Some(body) = rest.strip_prefix("* ") {
        let body = body.trim_start();
        let (speaker, text) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        return Ok(build(line, timestamp, speaker, MessageKind::Action, text.trim_start()));
    }
    Err(Error::parse(lineno, format!("unrecognised line: {line:?}")))
}

/// Splits a leading `[HH:MM]` (or `[HH:MM:SS]`) stamp into minutes.
fn split_timestamp(line: &str, lineno: usize) -> Result<Option<(i64, &str)>> {
    let Some(inner) = line.strip_prefix('[') else {
        return Ok(None);
    };
    let close = inner
        .find(']')
        .ok_or_else(|| Error::parse(lineno, "timestamp has no closing ']'"))?;
    let stamp = &inner[..close];
    let mut fields = stamp.split(':');
    let mut field = |name: &str, max: i64| -> Result<i64> {
        let value = fields
            .next()
            .and_then(|f| f.trim().parse::<i64>().ok())
            .filter(|v| (0..max).contains(v))
            .ok_or_else(|| Error::parse(lineno, format!("bad {name} in timestamp [{stamp}]")))?;
        Ok(value)
    };
    let hours = field("hour", 24)?;
    let minutes = field("minute", 60)?;
    Ok(Some((hours * 60 + minutes, &inner[close + 1..])))
}

fn parse_event(line: &str, event: &str, timestamp: i64) -> Message {
    let words: Vec<&str> = event.split_whitespace().collect();
    let speaker = words.first().copied().unwrap_or("");
    let kind = if is_system_event(&words) {
        MessageKind::System
    } else {
        MessageKind::Action
    };
    let text = match kind {
        MessageKind::System => event,
        _ => event[speaker.len()..].trim_start(),
    };
    build(line, timestamp, speaker, kind, text)
}

/// Matches the channel-event templates written by the logger, e.g.
/// `nick [~user@host] has joined #chan` or `old is now known as new`.
fn is_system_event(words: &[&str]) -> bool {
    if words.len() < 2 {
        return false;
    }
    let mut rest = &words[1..];
    // optional "[user@host]" group, possibly split across several words
    if rest.first().is_some_and(|w| w.starts_with('[')) {
        match rest.iter().position(|w| w.ends_with(']')) {
            Some(end) => rest = &rest[end + 1..],
            None => return false,
        }
    }
    let starts = |pattern: &[&str]| {
        rest.len() >= pattern.len() && rest.iter().zip(pattern).all(|(w, p)| w == p)
    };
    starts(&["has", "joined"])
        || starts(&["has", "left"])
        || starts(&["has", "quit"])
        || starts(&["is", "now", "known", "as"])
        || starts(&["changed", "the", "topic"])
        || starts(&["sets", "mode:"])
        || starts(&["was", "kicked"])
}

fn build(line: &str, timestamp: i64, speaker: &str, kind: MessageKind, text: &str) -> Message {
    Message {
        index: 0,
        timestamp,
        speaker: speaker.to_string(),
        kind,
        raw: line.to_string(),
        text: text.to_string(),
        tokens: tokenize(text),
        target: None,
    }
}

/// Finds the user a message is addressed to.
///
/// The first word, with trailing `,` or `:` removed, is checked first;
/// otherwise the remaining words are scanned in order. A speaker never
/// addresses themselves, and channel events have no target.
pub fn detect_target(message: &Message, users: &UserSet) -> Option<String> {
    if message.is_system() {
        return None;
    }
    target_in_text(&message.text, &message.speaker, users)
}

pub(crate) fn target_in_text(text: &str, speaker: &str, users: &UserSet) -> Option<String> {
    let mut words = text.split_whitespace();
    let first = words.next()?;
    let known = |word: &str| {
        users
            .get(word)
            .filter(|name| !name.eq_ignore_ascii_case(speaker))
            .map(str::to_string)
    };

    let head = first.trim_end_matches([',', ':']);
    if let Some(name) = known(head) {
        return Some(name);
    }
    words.find_map(|w| {
        let w = w.trim_matches(|c: char| ",:;.!?()'\"".contains(c));
        (!w.is_empty()).then(|| known(w)).flatten()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIGURE: &str = "\
[03:05] <delire> hehe yes. does Kubuntu have 'KPackage'?
=== delire found that to be an excellent interface to the apt suite in another distribution.
=== E-bola [...@...]  has joined #ubuntu
[03:06] <BurgerMann> does anyone know a consoleprog that scales jpegs fast and efficient?.. this digital camera age kills me when I have to scale photos :s
[03:06] <Seveas> delire, yes
[03:06] <Seveas> BurgerMann, convert
[03:06] <Seveas> part of imagemagick
=== E-bola [...@...] has left #ubuntu []
[03:06] <delire> BurgerMann: ImageMagick
[03:06] <Seveas> BurgerMann, i used that to convert 100's of photos in one command
[03:06] <BurgerMann> Oh... I'll have a look.. thx =)
";

    #[test]
    fn parses_user_line() {
        let msgs = parse_log("[03:06] <Seveas> BurgerMann, convert").unwrap();
        assert_eq!(msgs.len(), 1);
        assert_eq!(msgs[0].timestamp, 186);
        assert_eq!(msgs[0].speaker, "Seveas");
        assert_eq!(msgs[0].kind, MessageKind::Normal);
        assert_eq!(msgs[0].text, "BurgerMann, convert");
    }

    #[test]
    fn classifies_event_lines() {
        let msgs = parse_log(FIGURE).unwrap();
        assert_eq!(msgs.len(), 11);
        assert_eq!(msgs[1].kind, MessageKind::Action);
        assert_eq!(msgs[1].speaker, "delire");
        assert_eq!(msgs[2].kind, MessageKind::System);
        assert_eq!(msgs[2].speaker, "E-bola");
        assert_eq!(msgs[7].kind, MessageKind::System);
        // event lines inherit the preceding time
        assert_eq!(msgs[2].timestamp, 185);
        assert!(msgs.iter().enumerate().all(|(i, m)| m.index == i));
    }

    #[test]
    fn other_event_templates() {
        let log = "\
=== alice is now known as alice_
=== bob [~b@host] has quit [Ping timeout]
=== carol changed the topic of #ubuntu to: hi
=== dave has joined the dark side, apparently";
        let kinds: Vec<_> = parse_log(log).unwrap().into_iter().map(|m| m.kind).collect();
        assert_eq!(
            kinds,
            [MessageKind::System, MessageKind::System, MessageKind::System, MessageKind::System]
        );
        let msgs = parse_log("=== dave thinks he has joined").unwrap();
        assert_eq!(msgs[0].kind, MessageKind::Action);
    }

    #[test]
    fn figure_targets() {
        let msgs = parse_log(FIGURE).unwrap();
        assert_eq!(msgs[3].target, None);
        assert_eq!(msgs[4].target.as_deref(), Some("delire"));
        assert_eq!(msgs[5].target.as_deref(), Some("BurgerMann"));
        assert_eq!(msgs[8].target.as_deref(), Some("BurgerMann"));
        assert_eq!(msgs[2].target, None);
    }

    #[test]
    fn target_scan_and_case() {
        let users: UserSet = ["Alice", "bob"].into_iter().collect();
        assert_eq!(target_in_text("ALICE: hi", "bob", &users).as_deref(), Some("Alice"));
        assert_eq!(target_in_text("try that, bob.", "Alice", &users).as_deref(), Some("bob"));
        assert_eq!(target_in_text("bob, me again", "bob", &users), None);
        assert_eq!(target_in_text("", "bob", &users), None);
    }

    #[test]
    fn day_wrap_keeps_time_monotone() {
        let log = "[23:58] <a> x\n[23:59] <b> y\n[00:01] <a> z\n[00:01] <b> w\n[00:00] <c> v";
        let ts: Vec<_> = parse_log(log).unwrap().iter().map(|m| m.timestamp).collect();
        assert_eq!(ts, [1438, 1439, 1441, 1441, 2880]);
    }

    #[test]
    fn malformed_user_line() {
        let err = parse_log("[03:05] <ok> fine\n[03:06] <broken no close").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_log("[25:00] <a> b").is_err());
        assert!(parse_log("hello there").is_err());
    }

    #[test]
    fn star_actions() {
        let msgs = parse_log("[10:00] * alice waves").unwrap();
        assert_eq!(msgs[0].kind, MessageKind::Action);
        assert_eq!(msgs[0].speaker, "alice");
        assert_eq!(msgs[0].text, "waves");
    }

    #[test]
    fn empty_input() {
        assert!(parse_log("").unwrap().is_empty());
        assert!(parse_log("\n\n").unwrap().is_empty());
    }
}
