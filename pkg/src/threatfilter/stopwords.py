"""Built-in stopword list: 50 common English function words.

Most are already removed by the minimum-token-length rule; the list keeps
stopword filtering explicit and overridable (one word per line files,
``#`` comments).
"""

DEFAULT_STOPWORDS: tuple[str, ...] = (
    "a", "about", "after", "again", "all", "also", "and", "any", "are", "as",
    "at", "be", "because", "been", "before", "but", "by", "can", "could",
    "did", "for", "from", "had", "has", "have", "here", "into", "just",
    "more", "most", "not", "now", "of", "on", "only", "or", "our", "over",
    "some", "such", "that", "the", "their", "them", "then", "there", "these",
    "they", "this", "will",
)
