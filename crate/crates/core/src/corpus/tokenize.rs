/// Lowercases and splits on whitespace, peeling leading and trailing
/// punctuation runs into their own tokens. A word made only of punctuation
/// (an emoticon like `=)`) stays whole.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let word = word.to_lowercase();
        if is_punctuation_token(&word) {
            tokens.push(word);
            continue;
        }
        let start = word.find(|c: char| !c.is_ascii_punctuation()).unwrap_or(0);
        let end = word
            .rfind(|c: char| !c.is_ascii_punctuation())
            .map(|i| i + word[i..].chars().next().map_or(1, char::len_utf8))
            .unwrap_or(word.len());
        if start > 0 {
            tokens.push(word[..start].to_string());
        }
        tokens.push(word[start..end].to_string());
        if end < word.len() {
            tokens.push(word[end..].to_string());
        }
    }
    tokens
}

pub fn is_punctuation_token(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_punctuation())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(tokenize("BurgerMann, convert"), ["burgermann", ",", "convert"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("thx =)"), ["thx", "=)"]);
    }

    #[test]
    fn inner_punctuation_stays() {
        assert_eq!(
            tokenize("'KPackage'? 100's efficient?.."),
            ["'", "kpackage", "'?", "100's", "efficient", "?.."]
        );
        assert_eq!(tokenize("  héllo!  "), ["héllo", "!"]);
    }
}
