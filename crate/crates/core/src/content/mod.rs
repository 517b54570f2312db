//! HTML content extraction and the news/tweet corpus readers.

pub mod corpus;
pub mod html;

pub use corpus::{
    parse_news_corpus, parse_news_line, parse_tweet_line, parse_tweet_stream, CorpusIoError,
    NewsArticle, NewsLine, Parsed, TweetLine, TweetRecord,
};
pub use html::{
    decode_html, extract_links, extract_main_text, extract_main_text_with, extract_page,
    extract_title, BoilerplateParams, PageContent,
};
